//! Charge configurations and field evaluation.
//!
//! A configuration is a finite list of positive point charges together with
//! optional generator metadata carrying a rigorous bound on the truncated
//! tail. Two coordinate models are supported:
//!
//! * **disc** — charges at `z_k` with `Re z_k < 1`; the natural object is the
//!   field `f(z) = Σ a_k / (z − z_k)` and its potential
//!   `u(z) = Σ a_k log|z − z_k|`.
//! * **half-plane** — charges at `w_k` with `Re w_k > 0`; the natural object
//!   is `F(w) = Σ a_k w_k / (w − w_k)`.
//!
//! The two are conjugate under the Möbius map `w = 1/(1 − z)`, which satisfies
//! `f(z) = w · F(w)` with `w_k = 1/(1 − z_k)` and unchanged weights.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::kahan::{ComplexKahanSum, KahanSum};
use crate::scalar::Real;
use crate::tolerances;
use num_complex::Complex;

/// Coordinate model a configuration lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Disc,
    HalfPlane,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Disc => "disc",
            Model::HalfPlane => "half-plane",
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One term of the field: a positive weight at a location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCharge<R: Real> {
    pub weight: R,
    pub location: Complex<R>,
}

impl<R: Real> PointCharge<R> {
    pub fn new(weight: R, location: Complex<R>) -> Self {
        Self { weight, location }
    }
}

/// A value together with a rigorous bound on the modulus of whatever tail was
/// truncated to produce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded<T, R> {
    pub value: T,
    /// Upper bound on the distance from `value` to the untruncated sum.
    pub remainder: R,
}

pub type BoundedComplex<R> = Bounded<Complex<R>, R>;
pub type BoundedReal<R> = Bounded<R, R>;

/// Finite truncation of a charge family, with tail metadata.
///
/// Immutable after construction; all evaluations are pure and deterministic,
/// so values may be computed concurrently from many threads with bit-identical
/// results.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeConfiguration<R: Real> {
    model: Model,
    charges: Vec<PointCharge<R>>,
    family: Option<Family<R>>,
    weight_tail_bound: R,
}

impl<R: Real> ChargeConfiguration<R> {
    /// Build an explicit configuration. Weights must be positive and finite,
    /// locations finite and satisfying the model constraint (`Re z < 1` in the
    /// disc model, `Re w > 0` in the half-plane model). Exact duplicate
    /// locations are merged by adding their weights; order is otherwise
    /// preserved.
    pub fn new(model: Model, charges: Vec<PointCharge<R>>) -> Result<Self> {
        Self::with_family(model, charges, None, R::zero())
    }

    /// Expand a generator into a concrete configuration in the given model.
    pub fn from_family(family: Family<R>, model: Model) -> Result<Self> {
        family.validate()?;
        let charges = family.charges(model);
        let tail = family.weight_tail_bound();
        Self::with_family(model, charges, Some(family), tail)
    }

    fn with_family(
        model: Model,
        charges: Vec<PointCharge<R>>,
        family: Option<Family<R>>,
        weight_tail_bound: R,
    ) -> Result<Self> {
        if charges.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        if !weight_tail_bound.is_finite() || weight_tail_bound < R::zero() {
            return Err(Error::NonFiniteInput("weight_tail_bound"));
        }
        for (index, c) in charges.iter().enumerate() {
            if !c.weight.is_finite() || !c.location.re.is_finite() || !c.location.im.is_finite() {
                return Err(Error::NonFiniteInput("charge"));
            }
            if c.weight <= R::zero() {
                return Err(Error::ConstraintViolation(format!(
                    "weight > 0 violated at index {index}"
                )));
            }
            match model {
                Model::Disc => {
                    if c.location.re >= R::one() {
                        return Err(Error::ConstraintViolation(format!(
                            "Re z_k < 1 violated at index {index}"
                        )));
                    }
                }
                Model::HalfPlane => {
                    if c.location.re <= R::zero() {
                        return Err(Error::ConstraintViolation(format!(
                            "Re w_k > 0 violated at index {index}"
                        )));
                    }
                }
            }
        }
        let charges = merge_duplicates(charges);
        let mut total = KahanSum::new();
        for c in &charges {
            total.add(c.weight);
        }
        if !total.value().is_finite() {
            return Err(Error::NonFiniteInput("total weight"));
        }
        Ok(Self {
            model,
            charges,
            family,
            weight_tail_bound,
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn charges(&self) -> &[PointCharge<R>] {
        &self.charges
    }

    pub fn family(&self) -> Option<&Family<R>> {
        self.family.as_ref()
    }

    pub fn weight_tail_bound(&self) -> R {
        self.weight_tail_bound
    }

    pub fn total_weight(&self) -> R {
        KahanSum::sum_iter(self.charges.iter().map(|c| c.weight))
    }

    /// Largest pairwise distance between charge locations (zero for a single
    /// charge).
    pub fn diameter(&self) -> R {
        let mut d = R::zero();
        for (i, a) in self.charges.iter().enumerate() {
            for b in &self.charges[i + 1..] {
                d = d.max((a.location - b.location).norm());
            }
        }
        d
    }

    fn require(&self, expected: Model) -> Result<()> {
        if self.model != expected {
            return Err(Error::ModelMismatch {
                expected: expected.name(),
                found: self.model.name(),
            });
        }
        Ok(())
    }

    /// Distance from `z` to the nearest charge, with the charge index.
    pub fn nearest_charge(&self, z: Complex<R>) -> (usize, R) {
        let mut best = (0usize, R::infinity());
        for (i, c) in self.charges.iter().enumerate() {
            let d = (z - c.location).norm();
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    fn guard_pole(&self, z: Complex<R>) -> Result<()> {
        let tol = R::of(tolerances::POLE_PROXIMITY_REL) * (R::one() + z.norm());
        let (i, d) = self.nearest_charge(z);
        if d <= tol {
            let p = self.charges[i].location;
            return Err(Error::PoleProximity {
                point: (z.re.as_f64(), z.im.as_f64()),
                pole: (p.re.as_f64(), p.im.as_f64()),
            });
        }
        Ok(())
    }

    /// Field `f(z) = Σ a_k / (z − z_k)` of a disc-model configuration,
    /// compensated summation in stored order, with a rigorous tail remainder.
    pub fn field(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        self.require(Model::Disc)?;
        self.guard_pole(z)?;
        let mut acc = ComplexKahanSum::new();
        for c in &self.charges {
            let d = z - c.location;
            acc.add(d.inv() * c.weight);
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail_remainder_field(z),
        })
    }

    /// Termwise derivative `f'(z) = −Σ a_k / (z − z_k)^2`.
    pub fn field_derivative(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        self.require(Model::Disc)?;
        self.guard_pole(z)?;
        let mut acc = ComplexKahanSum::new();
        for c in &self.charges {
            let d = z - c.location;
            acc.add(-(d * d).inv() * c.weight);
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail_remainder_field_derivative(z),
        })
    }

    /// Subharmonic potential `u(z) = Σ a_k log|z − z_k|` (disc model). The
    /// field is the complex conjugate of its gradient.
    pub fn potential(&self, z: Complex<R>) -> Result<BoundedReal<R>> {
        self.require(Model::Disc)?;
        self.guard_pole(z)?;
        let mut acc = KahanSum::new();
        for c in &self.charges {
            acc.add(c.weight * (z - c.location).norm().ln());
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail_remainder_potential(z),
        })
    }

    /// Half-plane field `F(w) = Σ a_k w_k / (w − w_k)`.
    pub fn halfplane_field(&self, w: Complex<R>) -> Result<BoundedComplex<R>> {
        self.require(Model::HalfPlane)?;
        self.guard_pole(w)?;
        let mut acc = ComplexKahanSum::new();
        for c in &self.charges {
            let d = w - c.location;
            acc.add(d.inv() * c.location * c.weight);
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail_remainder_halfplane(w, false),
        })
    }

    /// Termwise derivative `F'(w) = −Σ a_k w_k / (w − w_k)^2`.
    pub fn halfplane_field_derivative(&self, w: Complex<R>) -> Result<BoundedComplex<R>> {
        self.require(Model::HalfPlane)?;
        self.guard_pole(w)?;
        let mut acc = ComplexKahanSum::new();
        for c in &self.charges {
            let d = w - c.location;
            acc.add(-(d * d).inv() * c.location * c.weight);
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail_remainder_halfplane(w, true),
        })
    }

    /// Natural field of the configuration: `f` in the disc model, `F` in the
    /// half-plane model.
    pub fn natural_field(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        match self.model {
            Model::Disc => self.field(z),
            Model::HalfPlane => self.halfplane_field(z),
        }
    }

    /// Natural field derivative (`f'` or `F'` by model).
    pub fn natural_field_derivative(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        match self.model {
            Model::Disc => self.field_derivative(z),
            Model::HalfPlane => self.halfplane_field_derivative(z),
        }
    }

    /// Conjugate a disc configuration to the half-plane model via
    /// `w_k = 1/(1 − z_k)`; weights are unchanged and `f(z) = w F(w)` holds
    /// with `w = 1/(1 − z)`. Inputs with `|z_k| < 1` land strictly in
    /// `Re w_k > 1/2`; points on the unit circle land on `Re w_k = 1/2`.
    pub fn to_halfplane(&self) -> Result<ChargeConfiguration<R>> {
        self.require(Model::Disc)?;
        let mut out = Vec::with_capacity(self.charges.len());
        for (index, c) in self.charges.iter().enumerate() {
            let d = Complex::new(R::one(), R::zero()) - c.location;
            if d.norm() == R::zero() {
                return Err(Error::SingularLocation { index });
            }
            out.push(PointCharge::new(c.weight, d.inv()));
        }
        Self::with_family(
            Model::HalfPlane,
            out,
            self.family.clone(),
            self.weight_tail_bound,
        )
    }

    /// Inverse conjugation: `z_k = 1 − 1/w_k`.
    pub fn to_disc(&self) -> Result<ChargeConfiguration<R>> {
        self.require(Model::HalfPlane)?;
        let one = Complex::new(R::one(), R::zero());
        let out = self
            .charges
            .iter()
            .map(|c| PointCharge::new(c.weight, one - c.location.inv()))
            .collect();
        Self::with_family(Model::Disc, out, self.family.clone(), self.weight_tail_bound)
    }

    /// Sum of term moduli `Σ a_k / |z − z_k|`; a natural magnitude scale for
    /// the field at `z`.
    pub fn field_scale(&self, z: Complex<R>) -> R {
        let mut acc = KahanSum::new();
        for c in &self.charges {
            let d = (z - c.location).norm();
            if d > R::zero() {
                acc.add(c.weight / d);
            }
        }
        acc.value()
    }

    // ----- tail remainders -------------------------------------------------

    /// Distance from `z` to the disc around 1 that contains every omitted
    /// charge location, or `None` if `z` is inside that disc (remainder is
    /// then unbounded).
    fn disc_tail_clearance(&self, z: Complex<R>) -> Option<(R, R)> {
        let fam = self.family.as_ref()?;
        let rho = fam.tail_location_radius();
        let t = (z - Complex::new(R::one(), R::zero())).norm();
        let dist = t - rho;
        if dist <= R::zero() {
            return Some((R::zero(), t + rho));
        }
        Some((dist, t + rho))
    }

    fn tail_remainder_field(&self, z: Complex<R>) -> R {
        if self.weight_tail_bound == R::zero() {
            return R::zero();
        }
        match self.model {
            Model::Disc => match self.disc_tail_clearance(z) {
                Some((dist, _)) if dist > R::zero() => self.weight_tail_bound / dist,
                Some(_) => R::infinity(),
                None => R::zero(),
            },
            Model::HalfPlane => R::infinity(),
        }
    }

    fn tail_remainder_field_derivative(&self, z: Complex<R>) -> R {
        if self.weight_tail_bound == R::zero() {
            return R::zero();
        }
        match self.disc_tail_clearance(z) {
            Some((dist, _)) if dist > R::zero() => self.weight_tail_bound / (dist * dist),
            Some(_) => R::infinity(),
            None => R::zero(),
        }
    }

    fn tail_remainder_potential(&self, z: Complex<R>) -> R {
        if self.weight_tail_bound == R::zero() {
            return R::zero();
        }
        match self.disc_tail_clearance(z) {
            Some((dist, far)) if dist > R::zero() => {
                let bound = dist.ln().abs().max(far.ln().abs());
                self.weight_tail_bound * bound
            }
            Some(_) => R::infinity(),
            None => R::zero(),
        }
    }

    /// Remainder for `F` (or `F'` with `derivative = true`): every omitted
    /// pole has `|w_k| >= W`, and `s ↦ s/(s − |w|)` (resp. `s/(s − |w|)^2`)
    /// is decreasing there, so the omitted sum is bounded by the tail weight
    /// times the value at `s = W`.
    fn tail_remainder_halfplane(&self, w: Complex<R>, derivative: bool) -> R {
        if self.weight_tail_bound == R::zero() {
            return R::zero();
        }
        let fam = match &self.family {
            Some(f) => f,
            None => return R::zero(),
        };
        let big = fam.min_omitted_pole_norm();
        let r = w.norm();
        if r >= big {
            return R::infinity();
        }
        let gap = big - r;
        if derivative {
            self.weight_tail_bound * big / (gap * gap)
        } else {
            self.weight_tail_bound * big / gap
        }
    }
}

/// Merge exact duplicate locations (weights added into the first occurrence),
/// preserving first-occurrence order.
fn merge_duplicates<R: Real>(charges: Vec<PointCharge<R>>) -> Vec<PointCharge<R>> {
    let n = charges.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (charges[i].location, charges[j].location);
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
            .then(i.cmp(&j))
    });
    let mut merged_into: Vec<Option<usize>> = vec![None; n];
    let mut extra_weight: Vec<R> = vec![R::zero(); n];
    let mut run_start = 0;
    for k in 1..=n {
        let same = k < n && {
            let a = charges[order[k - 1]].location;
            let b = charges[order[k]].location;
            a.re == b.re && a.im == b.im
        };
        if !same {
            if k - run_start > 1 {
                let keep = *order[run_start..k].iter().min().unwrap();
                for &idx in &order[run_start..k] {
                    if idx != keep {
                        merged_into[idx] = Some(keep);
                        extra_weight[keep] += charges[idx].weight;
                    }
                }
            }
            run_start = k;
        }
    }
    charges
        .into_iter()
        .enumerate()
        .filter(|(i, _)| merged_into[*i].is_none())
        .map(|(i, mut c)| {
            c.weight += extra_weight[i];
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::complex;

    fn single_unit_charge() -> ChargeConfiguration<f64> {
        ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(1.0, complex(0.0, 0.0))],
        )
        .unwrap()
    }

    fn symmetric_pair() -> ChargeConfiguration<f64> {
        ChargeConfiguration::new(
            Model::Disc,
            vec![
                PointCharge::new(1.0, complex(-0.5, 0.0)),
                PointCharge::new(1.0, complex(0.5, 0.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn field_single_term() {
        let f = single_unit_charge().field(complex(2.0, 0.0)).unwrap();
        assert_eq!(f.value, complex(0.5, 0.0));
        assert_eq!(f.remainder, 0.0);
    }

    #[test]
    fn field_symmetry_cancellation() {
        let f = symmetric_pair().field(complex(0.0, 0.0)).unwrap();
        assert_eq!(f.value.norm(), 0.0);
    }

    #[test]
    fn derivative_single_term() {
        let d = single_unit_charge()
            .field_derivative(complex(2.0, 0.0))
            .unwrap();
        assert!((d.value - complex(-0.25, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn derivative_symmetric_pair() {
        let d = symmetric_pair().field_derivative(complex(0.0, 0.0)).unwrap();
        assert!((d.value - complex(-8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn potential_values() {
        let u = single_unit_charge()
            .potential(complex(std::f64::consts::E, 0.0))
            .unwrap();
        assert!((u.value - 1.0).abs() < 1e-15);

        let cfg = ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(2.0, complex(0.0, 0.0))],
        )
        .unwrap();
        let u = cfg.potential(complex(1.0, 0.0)).unwrap();
        assert_eq!(u.value, 0.0);
    }

    #[test]
    fn halfplane_single_term() {
        let cfg = ChargeConfiguration::new(
            Model::HalfPlane,
            vec![PointCharge::new(1.0, complex(1.0, 0.0))],
        )
        .unwrap();
        let v = cfg.halfplane_field(complex(2.0, 0.0)).unwrap();
        assert!((v.value - complex(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_point_images() {
        let cfg = ChargeConfiguration::new(
            Model::Disc,
            vec![
                PointCharge::new(1.0, complex(0.0, 0.0)),
                PointCharge::new(1.0, complex(0.5, 0.0)),
                PointCharge::new(1.0, complex(0.0, 1.0)),
            ],
        )
        .unwrap();
        let hp = cfg.to_halfplane().unwrap();
        let w: Vec<num_complex::Complex<f64>> = hp.charges().iter().map(|c| c.location).collect();
        assert!((w[0] - complex(1.0, 0.0)).norm() < 1e-15);
        assert!((w[1] - complex(2.0, 0.0)).norm() < 1e-15);
        // |z| = 1 maps onto Re w = 1/2.
        assert!((w[2] - complex(0.5, 0.5)).norm() < 1e-15);
        assert!((w[2].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pole_proximity_guard() {
        let cfg = single_unit_charge();
        let err = cfg.field(complex(1e-16, 0.0)).unwrap_err();
        assert!(matches!(err, Error::PoleProximity { .. }));
    }

    #[test]
    fn rejects_bad_inputs() {
        let err = ChargeConfiguration::<f64>::new(Model::Disc, vec![]).unwrap_err();
        assert_eq!(err, Error::EmptyConfiguration);

        let err = ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(-1.0, complex(0.0, 0.0))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));

        let err = ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(1.0, complex(1.0, 0.0))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));

        let err = ChargeConfiguration::new(
            Model::HalfPlane,
            vec![PointCharge::new(1.0, complex(0.0, 1.0))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));
    }

    #[test]
    fn duplicates_merge_by_weight() {
        let cfg = ChargeConfiguration::new(
            Model::Disc,
            vec![
                PointCharge::new(1.0, complex(0.25, 0.0)),
                PointCharge::new(0.5, complex(-0.5, 0.0)),
                PointCharge::new(2.0, complex(0.25, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(cfg.charges().len(), 2);
        assert_eq!(cfg.charges()[0].weight, 3.0);
        assert_eq!(cfg.charges()[0].location, complex(0.25, 0.0));
        assert_eq!(cfg.charges()[1].location, complex(-0.5, 0.0));
    }

    #[test]
    fn model_mismatch_is_reported() {
        let cfg = single_unit_charge();
        let err = cfg.halfplane_field(complex(3.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::ModelMismatch { .. }));
    }

    #[test]
    fn works_in_f32() {
        let cfg = ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(1.0f32, Complex::new(0.0f32, 0.0))],
        )
        .unwrap();
        let f = cfg.field(Complex::new(2.0f32, 0.0)).unwrap();
        assert!((f.value.re - 0.5).abs() < 1e-6);
    }
}
