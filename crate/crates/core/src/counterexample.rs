//! The explicit zero-free half-plane field and its certificates.
//!
//! The function
//!
//! ```text
//! g(w) = 1 / ( w (w − 2) (e^{w−1} + 1) )
//! ```
//!
//! has no zeros and simple poles at 0, 2 and `u_k = 1 + (2k+1)πi`. Its
//! partial-fraction rearrangement
//!
//! ```text
//! h(w) = −a/w + b/(w − 2) + Σ_k c_k / (w − u_k)
//! ```
//!
//! with `a = 1/(2(e^{-1}+1))`, `b = 1/(2(e+1))`,
//! `c_k = 1/((2k+1)^2 π^2 + 1)` satisfies `h ≡ g`, which this module
//! certifies numerically: the truncated `h` agrees with `g` to within the
//! rigorous tail remainder, and certified winding numbers of `g` and of
//! `F(w) = w·h(w)` on growing circles account for every pole and no zero.
//!
//! `F` rearranges to `Σ d_k v_k/(w − v_k)` with `d_k > 0`, `Re v_k >= 1` and
//! `Σ d_k < ∞`, i.e. a legitimate half-plane charge configuration that is
//! nevertheless zero-free.
//!
//! A caution on limits along the negative axis: termwise, `r·F(−r)` tends to
//! `−Σ d_k v_k = −(a + b) = −1/2`, but the interchange of limit and sum is
//! invalid here — the poles march to infinity and carry another −1/2 with
//! them. Since `h ≡ g`, the true behavior is
//! `r·F(−r) = −r^2 g(−r) = −r/((r+2)(1+e^{−r−1})) → −1`. The probes in
//! [`crate::hypothesis`] report both quantities.

use crate::charge::{Bounded, BoundedComplex, BoundedReal, ChargeConfiguration};
use crate::contour::{winding_number, ContourShape, ContourSpec, Meromorphic, WindingResult};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::kahan::{ComplexKahanSum, KahanSum};
use crate::scalar::Real;
use crate::tolerances::{CLOSED_FORM_POLE_TOL, CONTOUR_CLEARANCE_REL};
use crate::Model;
use num_complex::Complex;

/// Residue magnitude `a = 1/(2(e^{-1} + 1))` of the pole of `g` at 0 (the
/// residue itself is `−a`).
pub fn residue_a<R: Real>() -> R {
    (R::of(2.0) * ((-R::one()).exp() + R::one())).recip()
}

/// Residue `b = 1/(2(e + 1))` of `g` at 2.
pub fn residue_b<R: Real>() -> R {
    (R::of(2.0) * (R::one().exp() + R::one())).recip()
}

/// Residue `c_k = 1/((2k+1)^2 π^2 + 1)` of `g` at `u_k`; satisfies
/// `c_k = c_{−k−1} > 0`.
pub fn residue_c<R: Real>(k: i64) -> R {
    let m = R::of((2 * k + 1) as f64) * R::PI();
    (m * m + R::one()).recip()
}

/// Pole `u_k = 1 + (2k+1)πi`; satisfies `u_{−k−1} = conj(u_k)`.
pub fn pole_u<R: Real>(k: i64) -> Complex<R> {
    Complex::new(R::one(), R::of((2 * k + 1) as f64) * R::PI())
}

/// Integral-comparison bound on the two-sided tail `Σ_{pairs k >= N} 2 c_k`:
/// each term is below `2/((2k+1)^2 π^2)` and the right-endpoint comparison
/// gives `1/(π^2 (2N − 1))`, i.e. `1/(2π^2 N)` up to an `O(1/N)` factor. The
/// true tail equals the midpoint value `1/(2π^2 N)` to `O(1/N^3)`, so this
/// bound leaves real floating-point margin while staying asymptotically
/// sharp.
pub fn c_tail_bound<R: Real>(half_width: usize) -> R {
    (R::PI() * R::PI() * R::of(2.0 * half_width as f64 - 1.0)).recip()
}

/// Result of evaluating `g`: for large `Re w` the reciprocal exponential
/// underflows and the value degrades to +0; that case is flagged rather than
/// treated as an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GValue<R: Real> {
    pub value: Complex<R>,
    pub underflowed: bool,
}

fn guard_closed_form_pole<R: Real>(w: Complex<R>, pole: Complex<R>) -> Result<()> {
    let tol = R::of(CLOSED_FORM_POLE_TOL) * (R::one() + w.norm());
    if (w - pole).norm() <= tol {
        return Err(Error::PoleProximity {
            point: (w.re.as_f64(), w.im.as_f64()),
            pole: (pole.re.as_f64(), pole.im.as_f64()),
        });
    }
    Ok(())
}

/// Indices k whose pole `u_k` could be near the imaginary ordinate `im`.
fn nearby_pole_indices<R: Real>(im: R) -> [i64; 3] {
    let guess = ((im / R::PI() - R::one()) / R::of(2.0))
        .round()
        .to_i64()
        .unwrap_or(0);
    [guess - 1, guess, guess + 1]
}

fn guard_exponential_poles<R: Real>(w: Complex<R>) -> Result<()> {
    for k in nearby_pole_indices(w.im) {
        guard_closed_form_pole(w, pole_u::<R>(k))?;
    }
    Ok(())
}

/// Evaluate `g(w) = 1/(w (w−2)(e^{w−1}+1))` in closed form.
///
/// For `Re w > 1` the exponential factor is evaluated through
/// `e^{−(w−1)}/(1 + e^{−(w−1)})` so that nothing overflows; once the
/// reciprocal exponential underflows the result is +0 with the flag set.
pub fn eval_g<R: Real>(w: Complex<R>) -> Result<GValue<R>> {
    let zero = Complex::new(R::zero(), R::zero());
    let two = Complex::new(R::of(2.0), R::zero());
    guard_closed_form_pole(w, zero)?;
    guard_closed_form_pole(w, two)?;
    guard_exponential_poles(w)?;

    let t = w - Complex::new(R::one(), R::zero());
    let rational = (w * (w - two)).inv();
    if t.re <= R::zero() {
        let q = t.exp() + R::one();
        Ok(GValue {
            value: rational / q,
            underflowed: false,
        })
    } else {
        let e = (-t).exp();
        let value = rational * e / (e + R::one());
        Ok(GValue {
            value,
            underflowed: value.norm() == R::zero(),
        })
    }
}

/// `F(w) = w·g(w) = 1/((w − 2)(e^{w−1}+1))` in closed form. The factor `w`
/// cancels the pole of `g` at 0, so `F` is regular there with
/// `F(0) = −a ≠ 0`.
pub fn eval_wg<R: Real>(w: Complex<R>) -> Result<GValue<R>> {
    let two = Complex::new(R::of(2.0), R::zero());
    guard_closed_form_pole(w, two)?;
    guard_exponential_poles(w)?;

    let t = w - Complex::new(R::one(), R::zero());
    let rational = (w - two).inv();
    if t.re <= R::zero() {
        let q = t.exp() + R::one();
        Ok(GValue {
            value: rational / q,
            underflowed: false,
        })
    } else {
        let e = (-t).exp();
        let value = rational * e / (e + R::one());
        Ok(GValue {
            value,
            underflowed: value.norm() == R::zero(),
        })
    }
}

/// Closed-form `g` as a meromorphic field (poles 0, 2, `u_k`).
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedG;

/// Closed-form `F = w·g` as a meromorphic field (poles 2, `u_k`).
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedF;

fn exponential_poles_in<R: Real>(shape: &ContourShape<R>) -> Vec<Complex<R>> {
    let (im_lo, im_hi) = shape.im_range();
    let lo = ((im_lo / R::PI() - R::one()) / R::of(2.0)).floor().to_i64();
    let hi = ((im_hi / R::PI() - R::one()) / R::of(2.0)).ceil().to_i64();
    let (lo, hi) = match (lo, hi) {
        (Some(lo), Some(hi)) => (lo - 1, hi + 1),
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for k in lo..=hi {
        let u = pole_u::<R>(k);
        if shape.strictly_contains(u) {
            out.push(u);
        }
    }
    out
}

impl<R: Real> Meromorphic<R> for ClosedG {
    fn eval(&self, w: Complex<R>) -> Result<BoundedComplex<R>> {
        eval_g(w).map(|g| Bounded {
            value: g.value,
            remainder: R::zero(),
        })
    }

    fn poles_in(&self, shape: &ContourShape<R>) -> Vec<Complex<R>> {
        let mut out = Vec::new();
        for p in [Complex::new(R::zero(), R::zero()), Complex::new(R::of(2.0), R::zero())] {
            if shape.strictly_contains(p) {
                out.push(p);
            }
        }
        out.extend(exponential_poles_in(shape));
        out
    }
}

impl<R: Real> Meromorphic<R> for ClosedF {
    fn eval(&self, w: Complex<R>) -> Result<BoundedComplex<R>> {
        eval_wg(w).map(|g| Bounded {
            value: g.value,
            remainder: R::zero(),
        })
    }

    fn poles_in(&self, shape: &ContourShape<R>) -> Vec<Complex<R>> {
        let mut out = Vec::new();
        let two = Complex::new(R::of(2.0), R::zero());
        if shape.strictly_contains(two) {
            out.push(two);
        }
        out.extend(exponential_poles_in(shape));
        out
    }
}

/// Truncation of the partial-fraction side, holding the residues and poles
/// retained in complete conjugate pairs `k = 0..half_width` (i.e. indices
/// `−half_width..=half_width−1`), plus the rigorous bound on the omitted
/// `c_k` mass. Immutable; all methods are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleModel<R: Real> {
    a: R,
    b: R,
    half_width: usize,
    c: Vec<R>,
    u: Vec<Complex<R>>,
    tail: R,
}

/// Outcome of checking `a = b + Σ c_k` on the truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueIdentity<R: Real> {
    pub lhs: R,
    pub rhs: BoundedReal<R>,
    pub gap: R,
    pub certified: bool,
}

/// Agreement of `h` with `g` sampled on one circle `|w − 1| = radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LRadiusCheck<R: Real> {
    pub radius: R,
    pub samples: usize,
    pub max_gap: R,
    pub max_remainder: R,
    /// Every sampled gap is within its own remainder bound.
    pub pointwise_ok: bool,
}

/// Winding certificates for `g` and `F` on `|w − 1| = 4mπ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFreeCertificate<R: Real> {
    pub m: usize,
    pub radius: R,
    pub winding_g: WindingResult<R>,
    pub winding_f: WindingResult<R>,
    pub poles_g: usize,
    pub poles_f: usize,
    pub expected_g: i64,
    pub expected_f: i64,
    pub zero_free: bool,
}

impl<R: Real> CounterexampleModel<R> {
    pub fn new(half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::ConstraintViolation(
                "half_width must be positive".into(),
            ));
        }
        let mut c = Vec::with_capacity(half_width);
        let mut u = Vec::with_capacity(half_width);
        for k in 0..half_width as i64 {
            c.push(residue_c::<R>(k));
            u.push(pole_u::<R>(k));
        }
        Ok(Self {
            a: residue_a(),
            b: residue_b(),
            half_width,
            c,
            u,
            tail: c_tail_bound(half_width),
        })
    }

    pub fn a(&self) -> R {
        self.a
    }

    pub fn b(&self) -> R {
        self.b
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Residue `c_k` for any integer index, via the pair symmetry
    /// `c_{−k−1} = c_k`.
    pub fn c(&self, k: i64) -> R {
        let idx = if k >= 0 { k } else { -k - 1 } as usize;
        if idx < self.half_width {
            self.c[idx]
        } else {
            residue_c(k)
        }
    }

    /// Retained pole `u_k` (nonnegative pair index; the conjugate partner is
    /// `u_{−k−1} = conj(u_k)`).
    pub fn u(&self, k: usize) -> Complex<R> {
        self.u[k]
    }

    /// Bound on the omitted residue mass `Σ_{pairs k >= half_width} 2 c_k`.
    pub fn tail(&self) -> R {
        self.tail
    }

    /// Evaluate `g` (closed form; independent of the truncation).
    pub fn eval_g(&self, w: Complex<R>) -> Result<GValue<R>> {
        eval_g(w)
    }

    /// Closed forms of `a`, `b` and requested `c_k`.
    pub fn residues(&self) -> (R, R) {
        (self.a, self.b)
    }

    /// Truncated partial fraction
    /// `h(w) = −a/w + b/(w−2) + Σ_pairs 2 c_k (w−1)/((w−1)^2 + ((2k+1)π)^2)`.
    ///
    /// Conjugate pole pairs are combined algebraically, so the pair term has a
    /// real denominator offset and the imaginary parts of each pair cancel
    /// exactly; `h(conj w) = conj(h(w))` holds to the last bit. The remainder
    /// is the omitted mass over the distance to the nearest omitted pole.
    pub fn eval_h(&self, w: Complex<R>) -> Result<BoundedComplex<R>> {
        let zero = Complex::new(R::zero(), R::zero());
        let two = Complex::new(R::of(2.0), R::zero());
        guard_closed_form_pole(w, zero)?;
        guard_closed_form_pole(w, two)?;
        for k in nearby_pole_indices(w.im) {
            let idx = if k >= 0 { k } else { -k - 1 };
            if idx >= 0 && (idx as usize) < self.half_width {
                guard_closed_form_pole(w, pole_u::<R>(k))?;
            }
        }

        let t = w - Complex::new(R::one(), R::zero());
        let t2 = t * t;
        let mut acc = ComplexKahanSum::new();
        acc.add(-w.inv() * self.a);
        acc.add((w - two).inv() * self.b);
        let twoc = R::of(2.0);
        for (k, &ck) in self.c.iter().enumerate() {
            let ak = R::of((2 * k + 1) as f64) * R::PI();
            let denom = t2 + ak * ak;
            acc.add(t / denom * (twoc * ck));
        }
        Ok(Bounded {
            value: acc.value(),
            remainder: self.tail / self.nearest_omitted_pole_distance(w),
        })
    }

    fn nearest_omitted_pole_distance(&self, w: Complex<R>) -> R {
        let first = self.half_width as i64;
        let band = R::of((2 * first + 1) as f64) * R::PI();
        let im = w.im.abs();
        if im <= band {
            let dx = w.re - R::one();
            let dy = band - im;
            (dx * dx + dy * dy).sqrt()
        } else {
            let guess = ((im / R::PI() - R::one()) / R::of(2.0))
                .round()
                .to_i64()
                .unwrap_or(first)
                .max(first);
            let mut best = R::infinity();
            for k in [guess - 1, guess, guess + 1] {
                let k = k.max(first);
                let u = Complex::new(R::one(), R::of((2 * k + 1) as f64) * R::PI());
                best = best.min((Complex::new(w.re, im) - u).norm());
            }
            best
        }
    }

    /// Check `a = b + Σ c_k` on the truncation: the gap must be within the
    /// omitted-mass bound.
    pub fn residue_identity(&self) -> ResidueIdentity<R> {
        let mut acc = KahanSum::new();
        acc.add(self.b);
        let twoc = R::of(2.0);
        for &ck in &self.c {
            acc.add(twoc * ck);
        }
        let value = acc.value();
        let gap = (self.a - value).abs();
        ResidueIdentity {
            lhs: self.a,
            rhs: Bounded {
                value,
                remainder: self.tail,
            },
            gap,
            certified: gap <= self.tail,
        }
    }

    /// The rearranged form of `F = w·h` as a half-plane configuration:
    /// weight `b` at 2 plus weights `c_k` at `u_k` and `conj u_k`.
    pub fn as_halfplane_config(&self) -> ChargeConfiguration<R> {
        ChargeConfiguration::from_family(
            Family::Counterexample {
                half_width: self.half_width,
            },
            Model::HalfPlane,
        )
        .expect("counterexample family is always a valid half-plane configuration")
    }

    /// Same charges mapped to the disc model (`z_k = 1 − 1/u_k` accumulate at
    /// 1 with approach angles tending to ±π/2).
    pub fn as_disc_config(&self) -> ChargeConfiguration<R> {
        ChargeConfiguration::from_family(
            Family::Counterexample {
                half_width: self.half_width,
            },
            Model::Disc,
        )
        .expect("counterexample family is always a valid disc configuration")
    }

    /// Sample `|h − g|` on `|w − 1| = radius` and compare against the
    /// pointwise remainder bound.
    pub fn l_check_on_circle(&self, radius: R, samples: usize) -> Result<LRadiusCheck<R>> {
        let center = Complex::new(R::one(), R::zero());
        let mut max_gap = R::zero();
        let mut max_remainder = R::zero();
        let mut pointwise_ok = true;
        for i in 0..samples {
            let theta = R::of(2.0) * R::PI() * R::of(i as f64) / R::of(samples as f64);
            let w = center + Complex::new(theta.cos(), theta.sin()) * radius;
            let h = self.eval_h(w)?;
            let g = eval_g(w)?;
            let gap = (h.value - g.value).norm();
            max_gap = max_gap.max(gap);
            max_remainder = max_remainder.max(h.remainder);
            if gap > h.remainder {
                pointwise_ok = false;
            }
        }
        Ok(LRadiusCheck {
            radius,
            samples,
            max_gap,
            max_remainder,
            pointwise_ok,
        })
    }

    /// Sampled sup of `|g|` and `|h|` on `|w − 1| = 4mπ` (the contours whose
    /// decay drives the identity `L ≡ 0`).
    pub fn circle_sup(&self, m: usize, samples: usize) -> Result<(R, R)> {
        let radius = R::of(4.0 * m as f64) * R::PI();
        let center = Complex::new(R::one(), R::zero());
        let mut sup_g = R::zero();
        let mut sup_h = R::zero();
        for i in 0..samples {
            let theta = R::of(2.0) * R::PI() * R::of(i as f64) / R::of(samples as f64);
            let w = center + Complex::new(theta.cos(), theta.sin()) * radius;
            sup_g = sup_g.max(eval_g(w)?.value.norm());
            sup_h = sup_h.max(self.eval_h(w)?.value.norm());
        }
        Ok((sup_g, sup_h))
    }

    /// Certified winding of `g` and of `F = w·h ≡ w·g` on `|w − 1| = 4mπ`.
    ///
    /// The contour radius keeps every pole at distance at least π. `F` is
    /// evaluated through the closed form: the truncated partial fraction is
    /// only certified equal to `g` up to its tail bound, below which it owns
    /// spurious zeros at `Re w ≈ 1 + log(1/tail)` that do not belong to `F`.
    pub fn certify_zero_free(&self, m: usize) -> Result<ZeroFreeCertificate<R>> {
        if m == 0 {
            return Err(Error::DomainError("m must be positive".into()));
        }
        if self.half_width < 2 * m {
            return Err(Error::DomainError(format!(
                "half_width {} does not retain all poles inside |w-1| = {}pi; need at least {}",
                self.half_width,
                4 * m,
                2 * m
            )));
        }
        let radius = R::of(4.0 * m as f64) * R::PI();
        let center = Complex::new(R::one(), R::zero());
        let shape = ContourShape::Circle { center, radius };

        // Contour-through-pole check (cannot trigger for these radii: the
        // nearest poles sit at distance >= pi).
        let clearance = R::of(CONTOUR_CLEARANCE_REL) * radius;
        for p in Meromorphic::<R>::poles_in(&ClosedG, &ContourShape::Circle {
            center,
            radius: radius + radius,
        }) {
            if ((p - center).norm() - radius).abs() <= clearance {
                return Err(Error::ContourThroughPole {
                    near: (p.re.as_f64(), p.im.as_f64()),
                });
            }
        }

        let spec = ContourSpec::new(shape.clone());
        let winding_g = winding_number(|w| Meromorphic::<R>::eval(&ClosedG, w), &spec)?;
        let winding_f = winding_number(|w| Meromorphic::<R>::eval(&ClosedF, w), &spec)?;
        let poles_g = Meromorphic::<R>::poles_in(&ClosedG, &shape).len();
        let poles_f = Meromorphic::<R>::poles_in(&ClosedF, &shape).len();
        let expected_g = -(4 * m as i64 + 2);
        let expected_f = -(4 * m as i64 + 1);
        let zero_free = winding_g.certified
            && winding_f.certified
            && winding_g.index == expected_g
            && winding_f.index == expected_f
            && winding_g.index + poles_g as i64 == 0
            && winding_f.index + poles_f as i64 == 0;
        Ok(ZeroFreeCertificate {
            m,
            radius,
            winding_g,
            winding_f,
            poles_g,
            poles_f,
            expected_g,
            expected_f,
            zero_free,
        })
    }
}
