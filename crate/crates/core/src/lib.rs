//! Equilibrium points of logarithmic potentials.
//!
//! A system of positive point charges `a_k` at locations `z_k` generates the
//! potential `u(z) = Σ a_k log|z − z_k|`; its equilibrium points are the
//! zeros of the meromorphic field `f(z) = Σ a_k/(z − z_k)`, the complex
//! conjugate of `∇u`. This crate evaluates such fields with rigorous
//! truncation remainders, counts and isolates their zeros by certified
//! argument-principle contours, hunts zero sequences approaching the boundary
//! point 1 of the disc model, checks the sharp Stolz-angle/convergence-
//! exponent thresholds that decide whether such sequences must exist, and
//! constructs the explicit zero-free configuration that shows the thresholds
//! cannot be improved.
//!
//! The numeric kernel is generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the [`f64`]-concrete aliases below are what most users
//! want.
//!
//! ```
//! use equilib_core::{complex, ChargeConfiguration64, Model, PointCharge};
//!
//! let cfg = ChargeConfiguration64::new(
//!     Model::Disc,
//!     vec![
//!         PointCharge::new(1.0, complex(-0.5, 0.0)),
//!         PointCharge::new(1.0, complex(0.5, 0.0)),
//!     ],
//! )
//! .unwrap();
//! let f = cfg.field(complex(0.0, 0.0)).unwrap();
//! assert_eq!(f.value.norm(), 0.0); // equilibrium between equal charges
//! ```

pub mod charge;
pub mod contour;
pub mod counterexample;
pub mod error;
pub mod family;
pub mod hull;
pub mod hypothesis;
pub mod kahan;
pub mod scalar;
pub mod tolerances;

pub use charge::{Bounded, BoundedComplex, BoundedReal, ChargeConfiguration, Model, PointCharge};
pub use contour::{
    count_zeros, isolate_zeros, refine_zero, winding_number, zero_sequence_toward_boundary,
    AnnulusReport, AnnulusStatus, BoundaryZeroSequence, ContourShape, ContourSpec, Meromorphic,
    Rect, WindingResult, ZeroCount, ZeroRecord,
};
pub use counterexample::{
    eval_g, eval_wg, ClosedF, ClosedG, CounterexampleModel, GValue, LRadiusCheck,
    ResidueIdentity, ZeroFreeCertificate,
};
pub use error::{Error, Result};
pub use family::Family;
pub use hull::{convex_hull, convex_hull_containment, hull_contains};
pub use hypothesis::{
    check_hypotheses, exponent_of_convergence, lemma0_probe, lemma1_probe, stolz_angle_sup,
    threshold_c, threshold_c2, ConditionStatus, HypothesisReport, LambdaEstimate, LambdaSource,
    SectorProbe, StolzSup, Threshold, Verdict,
};
pub use kahan::{ComplexKahanSum, KahanSum};
pub use scalar::{complex, principal_arg, Real};

pub use num_complex::Complex;

/// `f64` complex value.
pub type Complex64 = num_complex::Complex64;

/// Concrete `f64` instantiations of the core types.
pub type PointCharge64 = PointCharge<f64>;
pub type ChargeConfiguration64 = ChargeConfiguration<f64>;
pub type Family64 = Family<f64>;
pub type CounterexampleModel64 = CounterexampleModel<f64>;
pub type ZeroRecord64 = ZeroRecord<f64>;
pub type HypothesisReport64 = HypothesisReport<f64>;
