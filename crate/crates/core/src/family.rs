//! Charge-family generators.
//!
//! A generator produces the k-th charge by rule and carries the analytic data
//! a finite truncation cannot: the summed-weight tail, the region holding the
//! omitted locations, the exponent of convergence of the locations toward the
//! boundary point 1, and the limiting approach angle.

use crate::counterexample;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::{Model, PointCharge};
use num_complex::Complex;

/// Rule producing the k-th charge of an infinite family.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<R: Real> {
    /// `a_k = q^k` at `z_k = 1 − q^k`, k = 1..=count. Exponent of
    /// convergence 0.
    Geometric { ratio: R, count: usize },
    /// `a_k = k^{-2}` at `z_k = 1 − k^{-p} e^{iθ}`, k = 1..=count. Exponent of
    /// convergence `1/p`, constant approach angle `θ`.
    PowerLaw { exponent: R, angle: R, count: usize },
    /// The explicit zero-free example: weight `b` at 2 plus conjugate pole
    /// pairs `(c_k, u_k)`, `(c_k, conj u_k)` for k = 0..half_width, kept in
    /// complete pairs so the retained set is exactly conjugation-symmetric.
    /// Exponent of convergence 1, approach angle → π/2.
    Counterexample { half_width: usize },
}

impl<R: Real> Family<R> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Geometric { ratio, count } => {
                if !(ratio > R::zero() && ratio < R::one()) {
                    return Err(Error::ConstraintViolation(
                        "geometric ratio must lie in (0, 1)".into(),
                    ));
                }
                if count == 0 {
                    return Err(Error::ConstraintViolation(
                        "geometric count must be positive".into(),
                    ));
                }
            }
            Family::PowerLaw {
                exponent,
                angle,
                count,
            } => {
                if !(exponent > R::zero() && exponent.is_finite()) {
                    return Err(Error::ConstraintViolation(
                        "power-law exponent must be positive".into(),
                    ));
                }
                if angle.abs() >= R::FRAC_PI_2() {
                    return Err(Error::ConstraintViolation(
                        "power-law angle must satisfy |angle| < pi/2".into(),
                    ));
                }
                if count == 0 {
                    return Err(Error::ConstraintViolation(
                        "power-law count must be positive".into(),
                    ));
                }
            }
            Family::Counterexample { half_width } => {
                if half_width == 0 {
                    return Err(Error::ConstraintViolation(
                        "counterexample half_width must be positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Number of charges a truncation expands to.
    pub fn count(&self) -> usize {
        match *self {
            Family::Geometric { count, .. } => count,
            Family::PowerLaw { count, .. } => count,
            Family::Counterexample { half_width } => 2 * half_width + 1,
        }
    }

    /// Expand the truncation into concrete charges for the requested model.
    /// Disc and half-plane expansions are conjugate under `w = 1/(1 − z)`;
    /// weights are identical in both.
    pub fn charges(&self, model: Model) -> Vec<PointCharge<R>> {
        let one = R::one();
        match *self {
            Family::Geometric { ratio, count } => {
                let mut out = Vec::with_capacity(count);
                let mut qk = one;
                for _ in 1..=count {
                    qk *= ratio;
                    let location = match model {
                        Model::Disc => Complex::new(one - qk, R::zero()),
                        Model::HalfPlane => Complex::new(one / qk, R::zero()),
                    };
                    out.push(PointCharge::new(qk, location));
                }
                out
            }
            Family::PowerLaw {
                exponent,
                angle,
                count,
            } => {
                let dir = Complex::new(angle.cos(), angle.sin());
                let mut out = Vec::with_capacity(count);
                for k in 1..=count {
                    let kf = R::of(k as f64);
                    let weight = one / (kf * kf);
                    let radial = kf.powf(-exponent);
                    let location = match model {
                        Model::Disc => Complex::new(one, R::zero()) - dir * radial,
                        Model::HalfPlane => (dir * radial).inv(),
                    };
                    out.push(PointCharge::new(weight, location));
                }
                out
            }
            Family::Counterexample { half_width } => {
                let mut out = Vec::with_capacity(2 * half_width + 1);
                let b = counterexample::residue_b::<R>();
                let two = Complex::new(R::of(2.0), R::zero());
                let push = |out: &mut Vec<PointCharge<R>>, weight: R, w: Complex<R>| {
                    let location = match model {
                        Model::HalfPlane => w,
                        Model::Disc => Complex::new(one, R::zero()) - w.inv(),
                    };
                    out.push(PointCharge::new(weight, location));
                };
                push(&mut out, b, two);
                for k in 0..half_width as i64 {
                    let c = counterexample::residue_c::<R>(k);
                    let u = counterexample::pole_u::<R>(k);
                    push(&mut out, c, u);
                    push(&mut out, c, u.conj());
                }
                out
            }
        }
    }

    /// Rigorous bound on the summed weights of the omitted charges.
    pub fn weight_tail_bound(&self) -> R {
        match *self {
            // Σ_{k>N} q^k = q^{N+1} / (1 − q)
            Family::Geometric { ratio, count } => {
                ratio.powi(count as i32 + 1) / (R::one() - ratio)
            }
            // Σ_{k>N} k^{-2} <= ∫_N^∞ x^{-2} dx = 1/N
            Family::PowerLaw { count, .. } => R::one() / R::of(count as f64),
            Family::Counterexample { half_width } => {
                counterexample::c_tail_bound::<R>(half_width)
            }
        }
    }

    /// Radius of the disc around 1 containing every omitted location in the
    /// disc model.
    pub fn tail_location_radius(&self) -> R {
        match *self {
            Family::Geometric { ratio, count } => ratio.powi(count as i32 + 1),
            Family::PowerLaw {
                exponent, count, ..
            } => R::of(count as f64 + 1.0).powf(-exponent),
            Family::Counterexample { half_width } => {
                // omitted poles have |u_k| >= (2N+1)π, and |1 − z_k| = 1/|u_k|
                (R::of(2.0 * half_width as f64 + 1.0) * R::PI()).recip()
            }
        }
    }

    /// Lower bound on `|w_k|` over the omitted charges in the half-plane
    /// model (reciprocal of [`Self::tail_location_radius`]).
    pub fn min_omitted_pole_norm(&self) -> R {
        self.tail_location_radius().recip()
    }

    /// Analytic exponent of convergence of `Σ |1 − z_k|^τ` (equivalently
    /// `Σ |w_k|^{-τ}`): the infimum of τ for which the sum converges.
    pub fn declared_lambda(&self) -> R {
        match *self {
            Family::Geometric { .. } => R::zero(),
            Family::PowerLaw { exponent, .. } => exponent.recip(),
            Family::Counterexample { .. } => R::one(),
        }
    }

    /// Limiting value of `|arg(1 − z_k)|` as the family accumulates at 1.
    pub fn limit_angle(&self) -> R {
        match *self {
            Family::Geometric { .. } => R::zero(),
            Family::PowerLaw { angle, .. } => angle.abs(),
            // arg(1 − z_k) = arg(1/u_k) = −arg u_k → ∓π/2
            Family::Counterexample { .. } => R::FRAC_PI_2(),
        }
    }

    /// Whether the family locations accumulate at the boundary point 1 of the
    /// disc model. True for every built-in generator.
    pub fn accumulates_at_one(&self) -> bool {
        true
    }
}
