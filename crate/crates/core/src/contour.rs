//! Certified argument-principle machinery: winding numbers by adaptive
//! argument tracking, zero counting, quadtree isolation with Newton
//! refinement, and the boundary zero-sequence search.
//!
//! Winding numbers are computed without derivatives: the contour is sampled
//! adaptively until the argument turn on every segment is below π/2, which
//! certifies the total. When the evaluated function carries a truncation
//! remainder, a second flag (`tail_robust`) records whether the sampled
//! modulus stayed strictly above the remainder everywhere on the contour — by
//! Rouché, only then does the certified index transfer from the truncation to
//! the underlying untruncated function. Truncated families own spurious zeros
//! below their tail resolution; the flag is what keeps them out of certified
//! results.

use crate::charge::{Bounded, BoundedComplex, ChargeConfiguration};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::scalar::Real;
use crate::tolerances::{
    CONTOUR_CLEARANCE_REL, DEFAULT_INITIAL_SEGMENTS, DEFAULT_MAX_SUBDIVISION_DEPTH, MIN_BOX_SIZE,
    NEWTON_MAX_ITER, NEWTON_RESIDUAL_REL, NEWTON_STEP_REL, RADIUS_NUDGE, WINDING_MIN_MODULUS,
    ZERO_MERGE_TOL,
};
use crate::Model;
use num_complex::Complex;

/// Axis-aligned rectangle with `x0 <= x1`, `y0 <= y1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<R: Real> {
    pub x0: R,
    pub y0: R,
    pub x1: R,
    pub y1: R,
}

impl<R: Real> Rect<R> {
    pub fn new(x0: R, y0: R, x1: R, y1: R) -> Result<Self> {
        for v in [x0, y0, x1, y1] {
            if !v.is_finite() {
                return Err(Error::NonFiniteInput("rectangle corner"));
            }
        }
        let (x0, x1) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
        let (y0, y1) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        if x0 == x1 || y0 == y1 {
            return Err(Error::ConstraintViolation(
                "rectangle must be non-degenerate".into(),
            ));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    pub fn center(&self) -> Complex<R> {
        let half = R::of(0.5);
        Complex::new((self.x0 + self.x1) * half, (self.y0 + self.y1) * half)
    }

    pub fn width(&self) -> R {
        self.x1 - self.x0
    }

    pub fn height(&self) -> R {
        self.y1 - self.y0
    }

    pub fn diagonal(&self) -> R {
        self.width().hypot(self.height())
    }

    pub fn corners(&self) -> [Complex<R>; 4] {
        [
            Complex::new(self.x0, self.y0),
            Complex::new(self.x1, self.y0),
            Complex::new(self.x1, self.y1),
            Complex::new(self.x0, self.y1),
        ]
    }

    pub fn strictly_contains(&self, p: Complex<R>) -> bool {
        p.re > self.x0 && p.re < self.x1 && p.im > self.y0 && p.im < self.y1
    }

    pub fn contains_closed(&self, p: Complex<R>) -> bool {
        p.re >= self.x0 && p.re <= self.x1 && p.im >= self.y0 && p.im <= self.y1
    }

    /// Counterclockwise perimeter point for `t` in [0, 1).
    pub fn point_at(&self, t: R) -> Complex<R> {
        let w = self.width();
        let h = self.height();
        let per = (w + h) * R::of(2.0);
        let mut s = t * per;
        if s < w {
            return Complex::new(self.x0 + s, self.y0);
        }
        s -= w;
        if s < h {
            return Complex::new(self.x1, self.y0 + s);
        }
        s -= h;
        if s < w {
            return Complex::new(self.x1 - s, self.y1);
        }
        s -= w;
        Complex::new(self.x0, self.y1 - s)
    }

    /// Distance from `p` to the rectangle boundary.
    pub fn boundary_distance(&self, p: Complex<R>) -> R {
        let zero = R::zero();
        let dx_out = (self.x0 - p.re).max(zero).max(p.re - self.x1);
        let dy_out = (self.y0 - p.im).max(zero).max(p.im - self.y1);
        if dx_out > zero || dy_out > zero {
            dx_out.hypot(dy_out)
        } else {
            (p.re - self.x0)
                .min(self.x1 - p.re)
                .min(p.im - self.y0)
                .min(self.y1 - p.im)
        }
    }

    fn expand(&self, d: R) -> Rect<R> {
        Rect {
            x0: self.x0 - d,
            y0: self.y0 - d,
            x1: self.x1 + d,
            y1: self.y1 + d,
        }
    }
}

/// Contour geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum ContourShape<R: Real> {
    Circle { center: Complex<R>, radius: R },
    Rectangle(Rect<R>),
}

impl<R: Real> ContourShape<R> {
    pub fn point_at(&self, t: R) -> Complex<R> {
        match self {
            ContourShape::Circle { center, radius } => {
                let theta = R::of(2.0) * R::PI() * t;
                *center + Complex::new(theta.cos(), theta.sin()) * *radius
            }
            ContourShape::Rectangle(r) => r.point_at(t),
        }
    }

    pub fn strictly_contains(&self, p: Complex<R>) -> bool {
        match self {
            ContourShape::Circle { center, radius } => (p - *center).norm() < *radius,
            ContourShape::Rectangle(r) => r.strictly_contains(p),
        }
    }

    /// Characteristic size: radius or half-diagonal.
    pub fn scale(&self) -> R {
        match self {
            ContourShape::Circle { radius, .. } => *radius,
            ContourShape::Rectangle(r) => r.diagonal() * R::of(0.5),
        }
    }

    pub fn im_range(&self) -> (R, R) {
        match self {
            ContourShape::Circle { center, radius } => (center.im - *radius, center.im + *radius),
            ContourShape::Rectangle(r) => (r.y0, r.y1),
        }
    }

    pub fn boundary_distance(&self, p: Complex<R>) -> R {
        match self {
            ContourShape::Circle { center, radius } => ((p - *center).norm() - *radius).abs(),
            ContourShape::Rectangle(r) => r.boundary_distance(p),
        }
    }

    fn expand(&self, d: R) -> ContourShape<R> {
        match self {
            ContourShape::Circle { center, radius } => ContourShape::Circle {
                center: *center,
                radius: *radius + d,
            },
            ContourShape::Rectangle(r) => ContourShape::Rectangle(r.expand(d)),
        }
    }
}

/// A contour plus the sampling policy of the winding engine.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec<R: Real> {
    pub shape: ContourShape<R>,
    pub initial_segments: usize,
    pub max_subdivision_depth: usize,
    /// Samples with modulus at or below this are a contour through a zero.
    pub min_modulus: R,
}

impl<R: Real> ContourSpec<R> {
    pub fn new(shape: ContourShape<R>) -> Self {
        Self {
            shape,
            initial_segments: DEFAULT_INITIAL_SEGMENTS,
            max_subdivision_depth: DEFAULT_MAX_SUBDIVISION_DEPTH,
            min_modulus: R::of(WINDING_MIN_MODULUS),
        }
    }

    pub fn circle(center: Complex<R>, radius: R) -> Self {
        Self::new(ContourShape::Circle { center, radius })
    }

    pub fn rectangle(rect: Rect<R>) -> Self {
        Self::new(ContourShape::Rectangle(rect))
    }

    pub fn with_initial_segments(mut self, n: usize) -> Self {
        self.initial_segments = n.max(8);
        self
    }
}

/// Certified winding index from adaptive argument tracking.
#[derive(Debug, Clone, PartialEq)]
pub struct WindingResult<R: Real> {
    pub index: i64,
    /// Every segment turned by less than π/2 and the total closed up to an
    /// integer.
    pub certified: bool,
    /// The sampled modulus stayed strictly above the truncation remainder
    /// everywhere, so the index also holds for the untruncated function.
    pub tail_robust: bool,
    pub max_turn_per_segment: R,
    pub segments_used: usize,
    /// min over samples of (|value| − remainder).
    pub min_margin: R,
    /// Radius actually used if the contour had to be nudged off a charge.
    pub nudged_radius: Option<R>,
}

struct WindingAccum<R: Real> {
    total: KahanSum<R>,
    max_turn: R,
    segments: usize,
    min_margin: R,
    turn_certified: bool,
}

fn winding_eval<R: Real, F>(
    func: &F,
    shape: &ContourShape<R>,
    t: R,
    min_modulus: R,
    acc_margin: &mut R,
) -> Result<Complex<R>>
where
    F: Fn(Complex<R>) -> Result<BoundedComplex<R>>,
{
    let p = shape.point_at(t);
    let b = match func(p) {
        Ok(b) => b,
        Err(Error::PoleProximity { pole, .. }) => {
            return Err(Error::ContourThroughPole { near: pole })
        }
        Err(e) => return Err(e),
    };
    let norm = b.value.norm();
    if !norm.is_finite() || norm <= min_modulus {
        return Err(Error::ContourThroughPole {
            near: (p.re.as_f64(), p.im.as_f64()),
        });
    }
    let margin = norm - b.remainder;
    if margin < *acc_margin {
        *acc_margin = margin;
    }
    Ok(b.value)
}

#[allow(clippy::too_many_arguments)]
fn refine_segment<R: Real, F>(
    func: &F,
    spec: &ContourSpec<R>,
    acc: &mut WindingAccum<R>,
    t0: R,
    v0: Complex<R>,
    t1: R,
    v1: Complex<R>,
    depth: usize,
) -> Result<()>
where
    F: Fn(Complex<R>) -> Result<BoundedComplex<R>>,
{
    // subdivide on a large argument turn, and also on a large modulus swing:
    // a segment passing close to a zero (or a pole/zero pair) can wrap the
    // argument by a full turn while the endpoint phases look tame, but the
    // modulus cannot stay flat through such a pass at adequate resolution
    let turn = (v1 / v0).arg();
    let ratio = v1.norm() / v0.norm();
    let four = R::of(4.0);
    let tame = turn.abs() < R::FRAC_PI_2() && ratio < four && ratio > four.recip();
    if tame || depth == 0 {
        if turn.abs() >= R::FRAC_PI_2() {
            acc.turn_certified = false;
        }
        acc.total.add(turn);
        acc.segments += 1;
        if turn.abs() > acc.max_turn {
            acc.max_turn = turn.abs();
        }
        return Ok(());
    }
    let tm = (t0 + t1) * R::of(0.5);
    let vm = winding_eval(func, &spec.shape, tm, spec.min_modulus, &mut acc.min_margin)?;
    refine_segment(func, spec, acc, t0, v0, tm, vm, depth - 1)?;
    refine_segment(func, spec, acc, tm, vm, t1, v1, depth - 1)
}

/// Winding number of `func` along the contour: total argument change over 2π,
/// computed by adaptive segment subdivision until each segment turns by less
/// than π/2. Exhausting the subdivision depth returns an *uncertified* index
/// rather than an error; a sample at (or numerically indistinguishable from)
/// zero is `ContourThroughPole`.
pub fn winding_number<R: Real, F>(func: F, spec: &ContourSpec<R>) -> Result<WindingResult<R>>
where
    F: Fn(Complex<R>) -> Result<BoundedComplex<R>>,
{
    let n = spec.initial_segments.max(8);
    let mut min_margin = R::infinity();
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..n {
        let t = R::of(i as f64) / R::of(n as f64);
        let v = winding_eval(&func, &spec.shape, t, spec.min_modulus, &mut min_margin)?;
        samples.push((t, v));
    }
    samples.push((R::one(), samples[0].1));

    let mut acc = WindingAccum {
        total: KahanSum::new(),
        max_turn: R::zero(),
        segments: 0,
        min_margin,
        turn_certified: true,
    };
    for pair in samples.windows(2) {
        let (t0, v0) = pair[0];
        let (t1, v1) = pair[1];
        refine_segment(
            &func,
            spec,
            &mut acc,
            t0,
            v0,
            t1,
            v1,
            spec.max_subdivision_depth,
        )?;
    }

    let turns = acc.total.value() / (R::of(2.0) * R::PI());
    let rounded = turns.round();
    let index = rounded.to_i64().ok_or(Error::DomainError(
        "winding total is not representable".into(),
    ))?;
    let closed = (turns - rounded).abs() < R::of(0.25);
    Ok(WindingResult {
        index,
        certified: acc.turn_certified && closed,
        tail_robust: acc.min_margin > R::zero(),
        max_turn_per_segment: acc.max_turn,
        segments_used: acc.segments,
        min_margin: acc.min_margin,
        nudged_radius: None,
    })
}

/// A function meromorphic on the regions of interest: evaluable with a
/// truncation remainder, with enumerable poles in any bounded region.
pub trait Meromorphic<R: Real> {
    fn eval(&self, z: Complex<R>) -> Result<BoundedComplex<R>>;

    /// Derivative; the default is a central difference of `eval`.
    fn derivative(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        let h = R::of(1e-6) * (R::one() + z.norm());
        let step = Complex::new(h, R::zero());
        let fp = self.eval(z + step)?;
        let fm = self.eval(z - step)?;
        let inv = (R::of(2.0) * h).recip();
        Ok(Bounded {
            value: (fp.value - fm.value) * inv,
            remainder: (fp.remainder + fm.remainder) * inv,
        })
    }

    /// Poles strictly inside the shape.
    fn poles_in(&self, shape: &ContourShape<R>) -> Vec<Complex<R>>;

    /// Whether the function commutes with conjugation (real on the real
    /// axis); enables bisection fallbacks there.
    fn is_real_symmetric(&self) -> bool {
        false
    }
}

impl<R: Real> Meromorphic<R> for ChargeConfiguration<R> {
    fn eval(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        self.natural_field(z)
    }

    fn derivative(&self, z: Complex<R>) -> Result<BoundedComplex<R>> {
        self.natural_field_derivative(z)
    }

    fn poles_in(&self, shape: &ContourShape<R>) -> Vec<Complex<R>> {
        self.charges()
            .iter()
            .map(|c| c.location)
            .filter(|p| shape.strictly_contains(*p))
            .collect()
    }

    fn is_real_symmetric(&self) -> bool {
        self.charges().iter().all(|c| c.location.im == R::zero())
            || (self.model() == Model::HalfPlane && {
                // conjugate-paired charges with equal weights
                let mut sorted: Vec<_> = self
                    .charges()
                    .iter()
                    .map(|c| (c.location.re, c.location.im, c.weight))
                    .collect();
                sorted.sort_by(|a, b| {
                    a.0.partial_cmp(&b.0)
                        .unwrap()
                        .then(a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                        .then(a.1.partial_cmp(&b.1).unwrap())
                });
                sorted.chunks(2).all(|ch| {
                    ch.len() == 1 && ch[0].1 == R::zero()
                        || ch.len() == 2
                            && ch[0].0 == ch[1].0
                            && ch[0].1 == -ch[1].1
                            && ch[0].2 == ch[1].2
                })
            })
    }
}

/// Result of zero counting inside a contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCount<R: Real> {
    pub zeros: i64,
    pub poles_inside: usize,
    pub winding: WindingResult<R>,
    pub shape: ContourShape<R>,
}

/// Count zeros inside the contour: the certified winding index plus the
/// number of poles strictly inside. A circle contour that passes within
/// tolerance of a pole is nudged outward by factors of `1 + 2^-10` (the nudge
/// is reported); a rectangle in that situation is an error. An uncertified
/// winding is returned as `SubdivisionExhausted`.
pub fn count_zeros<R: Real>(
    func: &impl Meromorphic<R>,
    spec: &ContourSpec<R>,
) -> Result<ZeroCount<R>> {
    let mut shape = spec.shape.clone();
    let mut nudged = None;
    let nudge = R::of(RADIUS_NUDGE);
    for _attempt in 0..64 {
        let clearance = R::of(CONTOUR_CLEARANCE_REL) * shape.scale();
        let probe = shape.expand(clearance * R::of(2.0));
        let offender = func
            .poles_in(&probe)
            .into_iter()
            .enumerate()
            .find(|(_, p)| shape.boundary_distance(*p) <= clearance);
        match offender {
            None => break,
            Some((index, _)) => match &mut shape {
                ContourShape::Circle { radius, .. } => {
                    *radius *= R::one() + nudge;
                    nudged = Some(*radius);
                }
                ContourShape::Rectangle(_) => return Err(Error::BoundaryCharge { index }),
            },
        }
    }

    // sampling density: a pole at distance d from the contour forces sample
    // spacing below d/2, or the argument can wrap a full turn between
    // samples without any segment looking suspicious (the wrap hides when a
    // zero sits across the contour from the pole). Poles so close that the
    // required density exceeds the cap are treated like boundary conflicts.
    let perimeter = match &shape {
        ContourShape::Circle { radius, .. } => R::of(2.0) * R::PI() * *radius,
        ContourShape::Rectangle(r) => (r.width() + r.height()) * R::of(2.0),
    };
    let min_pole_dist = func
        .poles_in(&shape.expand(shape.scale()))
        .into_iter()
        .map(|p| shape.boundary_distance(p))
        .fold(R::infinity(), R::min);
    let segments = if min_pole_dist.is_finite() && min_pole_dist > R::zero() {
        let required = (R::of(2.0) * perimeter / min_pole_dist)
            .ceil()
            .to_usize()
            .unwrap_or(usize::MAX);
        if required > MAX_CONTOUR_SEGMENTS {
            return Err(Error::ContourThroughPole {
                near: (shape.point_at(R::zero()).re.as_f64(), shape.point_at(R::zero()).im.as_f64()),
            });
        }
        spec.initial_segments.max(required)
    } else {
        spec.initial_segments
    };

    let used = ContourSpec {
        shape: shape.clone(),
        initial_segments: segments,
        ..spec.clone()
    };
    let mut winding = winding_number(|z| func.eval(z), &used)?;
    winding.nudged_radius = nudged;
    if !winding.certified {
        return Err(Error::SubdivisionExhausted {
            index: winding.index,
            max_turn: winding.max_turn_per_segment.as_f64(),
        });
    }
    let poles = func.poles_in(&shape);
    Ok(ZeroCount {
        zeros: winding.index + poles.len() as i64,
        poles_inside: poles.len(),
        winding,
        shape,
    })
}

/// A located zero with its certification data.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord<R: Real> {
    pub location: Complex<R>,
    /// `|f|` at the refined location.
    pub residual: R,
    /// `|f'| (1 + |location|)`: the residual divided by this is the implied
    /// relative location error.
    pub local_scale: R,
    pub iterations: usize,
    /// 1 for refined simple zeros; a cluster count for boxes below the
    /// minimum size.
    pub multiplicity: usize,
    /// Contour whose certified winding accounts for this record.
    pub enclosure: ContourSpec<R>,
    /// Enclosure margin stayed above the truncation remainder.
    pub tail_robust: bool,
    /// Refinement converged and the enclosure winding was certified.
    pub certified: bool,
    /// Dyadic annulus index when produced by the boundary search.
    pub annulus: Option<u32>,
}

impl<R: Real> ZeroRecord<R> {
    /// Residual gate: implied relative location error at most `1e-9`.
    pub fn residual_ok(&self) -> bool {
        self.residual
            <= R::of(crate::tolerances::CERTIFIED_RESIDUAL_REL) * self.local_scale
    }
}

fn eval_norm<R: Real>(func: &impl Meromorphic<R>, z: Complex<R>) -> Option<R> {
    func.eval(z).ok().map(|b| b.value.norm())
}

/// Newton refinement from a seed; enclosure is re-certified with a small
/// circle afterwards.
pub fn refine_zero<R: Real>(
    func: &impl Meromorphic<R>,
    seed: Complex<R>,
) -> Result<ZeroRecord<R>> {
    let mut rec = newton_refine(func, seed, None)?;
    // a small certified circle around the zero to serve as the enclosure
    let mut radius = R::of(1e-6) * (R::one() + rec.location.norm());
    for _ in 0..12 {
        let spec = ContourSpec::circle(rec.location, radius).with_initial_segments(16);
        match count_zeros(func, &spec) {
            Ok(zc) if zc.zeros == 1 => {
                rec.enclosure = ContourSpec {
                    shape: zc.shape.clone(),
                    ..spec
                };
                rec.tail_robust = zc.winding.tail_robust;
                rec.certified = true;
                return Ok(rec);
            }
            _ => radius = radius + radius,
        }
    }
    rec.certified = false;
    Ok(rec)
}

fn newton_refine<R: Real>(
    func: &impl Meromorphic<R>,
    seed: Complex<R>,
    trust: Option<&Rect<R>>,
) -> Result<ZeroRecord<R>> {
    let mut z = seed;
    func.eval(z)?; // reject pole-proximate seeds up front
    let step_tol = R::of(NEWTON_STEP_REL);
    let res_tol = R::of(NEWTON_RESIDUAL_REL);
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        iterations += 1;
        let f = func.eval(z)?;
        let fp = func.derivative(z)?;
        let fp_norm = fp.value.norm();
        if fp_norm == R::zero() || !fp_norm.is_finite() {
            break;
        }
        let scale = R::one() + z.norm();
        if f.value.norm() <= res_tol * fp_norm * scale {
            converged = true;
            break;
        }
        let mut step = f.value / fp.value;
        let mut next = z - step;
        let mut tries = 0;
        while tries < 8 {
            let inside =
                trust.is_none_or(|r| r.expand(r.diagonal()).contains_closed(next));
            if inside && func.eval(next).is_ok() {
                break;
            }
            step = step * R::of(0.5);
            next = z - step;
            tries += 1;
        }
        if tries == 8 {
            break;
        }
        z = next;
        if step.norm() <= step_tol * (R::one() + z.norm()) {
            converged = true;
            break;
        }
    }
    let f = func.eval(z)?;
    let fp = func.derivative(z)?;
    let residual = f.value.norm();
    let local_scale = fp.value.norm() * (R::one() + z.norm());
    if !converged {
        return Err(Error::NoConvergence {
            last: (z.re.as_f64(), z.im.as_f64()),
            residual: residual.as_f64(),
        });
    }
    Ok(ZeroRecord {
        location: z,
        residual,
        local_scale,
        iterations,
        multiplicity: 1,
        enclosure: ContourSpec::circle(z, R::of(1e-6) * (R::one() + z.norm())),
        tail_robust: false,
        certified: false,
        annulus: None,
    })
}

/// Bisection on the real axis between `lo` and `hi`; requires a sign change
/// of `Re f` at the bracket ends.
fn bisect_real<R: Real>(
    func: &impl Meromorphic<R>,
    mut lo: R,
    mut hi: R,
) -> Result<(R, usize)> {
    let at = |x: R| -> Result<R> {
        Ok(func.eval(Complex::new(x, R::zero()))?.value.re)
    };
    let mut flo = at(lo)?;
    let fhi = at(hi)?;
    if flo == R::zero() {
        return Ok((lo, 0));
    }
    if fhi == R::zero() {
        return Ok((hi, 0));
    }
    if (flo > R::zero()) == (fhi > R::zero()) {
        return Err(Error::NoConvergence {
            last: (lo.as_f64(), 0.0),
            residual: flo.as_f64().abs(),
        });
    }
    let mut iters = 0;
    for _ in 0..200 {
        iters += 1;
        let mid = (lo + hi) * R::of(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = at(mid)?;
        if fm == R::zero() {
            return Ok((mid, iters));
        }
        if (fm > R::zero()) == (flo > R::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo) <= R::of(NEWTON_STEP_REL) * (R::one() + mid.abs()) {
            break;
        }
    }
    Ok(((lo + hi) * R::of(0.5), iters))
}

/// Scan the real segment of a box for a bracket and bisect.
fn real_axis_fallback<R: Real>(
    func: &impl Meromorphic<R>,
    rect: &Rect<R>,
) -> Option<(R, usize)> {
    let n = 48;
    let mut prev: Option<(R, R)> = None;
    for i in 0..=n {
        let x = rect.x0
            + (rect.x1 - rect.x0) * R::of(i as f64 + 0.5) / R::of(n as f64 + 1.0);
        let v = match func.eval(Complex::new(x, R::zero())) {
            Ok(b) => b.value.re,
            Err(_) => {
                prev = None;
                continue;
            }
        };
        if let Some((px, pv)) = prev {
            if (pv > R::zero()) != (v > R::zero()) {
                if let Ok((root, iters)) = bisect_real(func, px, x) {
                    return Some((root, iters));
                }
            }
        }
        prev = Some((x, v));
    }
    None
}

const MAX_BOXES: usize = 100_000;
/// Cap on pole-distance-driven contour sampling; a pole demanding more is
/// handled as a boundary conflict instead.
const MAX_CONTOUR_SEGMENTS: usize = 16_384;
const SPLIT_OFFSETS: [i32; 13] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 6, -6, 8, -8];

fn split_candidates<R: Real>(lo: R, hi: R, blocked: &[R]) -> Vec<R> {
    let span = hi - lo;
    let mid = (lo + hi) * R::of(0.5);
    let unit = span / R::of(64.0);
    // prefer split lines with real standoff from poles (a line hugging a
    // pole makes the child contours expensive to certify); degrade the
    // required clearance only when dense poles leave no wide choice
    for denom in [32.0, 128.0, 512.0] {
        let clearance = span / R::of(denom);
        let picks: Vec<R> = SPLIT_OFFSETS
            .iter()
            .map(|&k| mid + unit * R::of(k as f64))
            .filter(|&c| blocked.iter().all(|&b| (b - c).abs() > clearance))
            .collect();
        if !picks.is_empty() {
            return picks;
        }
    }
    let clearance = span * R::of(4.0 * CONTOUR_CLEARANCE_REL);
    SPLIT_OFFSETS
        .iter()
        .map(|&k| mid + unit * R::of(k as f64))
        .filter(|&c| blocked.iter().all(|&b| (b - c).abs() > clearance))
        .collect()
}

struct IsolateState<R: Real> {
    records: Vec<ZeroRecord<R>>,
    boxes_used: usize,
}

fn isolate_in_box<R: Real>(
    func: &impl Meromorphic<R>,
    rect: Rect<R>,
    count: i64,
    tail_robust: bool,
    state: &mut IsolateState<R>,
) -> Result<()> {
    if count <= 0 {
        return Ok(());
    }
    state.boxes_used += 1;
    if state.boxes_used > MAX_BOXES {
        return Err(Error::SubdivisionExhausted {
            index: count,
            max_turn: 0.0,
        });
    }

    let min_size = R::of(MIN_BOX_SIZE) * (R::one() + rect.center().norm());
    let tiny = rect.width() <= min_size && rect.height() <= min_size;

    if count == 1 && !tiny {
        // Newton from the centroid, then from the corners ordered by |f|.
        let mut seeds = vec![rect.center()];
        let mut corner_mag: Vec<(R, Complex<R>)> = rect
            .corners()
            .iter()
            .filter_map(|&c| eval_norm(func, c).map(|m| (m, c)))
            .collect();
        corner_mag.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        seeds.extend(corner_mag.into_iter().take(3).map(|(_, c)| c));
        for seed in seeds {
            if let Ok(mut rec) = newton_refine(func, seed, Some(&rect)) {
                if rect.contains_closed(rec.location) {
                    rec.enclosure = ContourSpec::rectangle(rect);
                    rec.tail_robust = tail_robust;
                    rec.certified = true;
                    state.records.push(rec);
                    return Ok(());
                }
            }
        }
        if func.is_real_symmetric() && rect.y0 < R::zero() && rect.y1 > R::zero() {
            if let Some((x, iterations)) = real_axis_fallback(func, &rect) {
                let z = Complex::new(x, R::zero());
                let f = func.eval(z)?;
                let fp = func.derivative(z)?;
                state.records.push(ZeroRecord {
                    location: z,
                    residual: f.value.norm(),
                    local_scale: fp.value.norm() * (R::one() + z.norm()),
                    iterations,
                    multiplicity: 1,
                    enclosure: ContourSpec::rectangle(rect),
                    tail_robust,
                    certified: true,
                    annulus: None,
                });
                return Ok(());
            }
        }
        // fall through to subdivision: the zero is enclosed but the seeds
        // did not converge inside the box
    }

    if tiny {
        // unresolved cluster below the resolution floor
        let center = rect.center();
        let (residual, local_scale) = match (func.eval(center), func.derivative(center)) {
            (Ok(f), Ok(fp)) => (f.value.norm(), fp.value.norm() * (R::one() + center.norm())),
            _ => (R::nan(), R::nan()),
        };
        state.records.push(ZeroRecord {
            location: center,
            residual,
            local_scale,
            iterations: 0,
            multiplicity: count as usize,
            enclosure: ContourSpec::rectangle(rect),
            tail_robust,
            certified: false,
            annulus: None,
        });
        return Ok(());
    }

    // subdivide into four, avoiding poles on the split lines and retrying
    // offsets until the child counts account for the parent
    let poles = func.poles_in(&ContourShape::Rectangle(rect));
    let xs: Vec<R> = poles.iter().map(|p| p.re).collect();
    let ys: Vec<R> = poles.iter().map(|p| p.im).collect();
    let cand_x = split_candidates(rect.x0, rect.x1, &xs);
    let cand_y = split_candidates(rect.y0, rect.y1, &ys);
    if cand_x.is_empty() || cand_y.is_empty() {
        return Err(Error::SubdivisionExhausted {
            index: count,
            max_turn: 0.0,
        });
    }
    for attempt in 0..cand_x.len() * cand_y.len() {
        let xm = cand_x[attempt % cand_x.len()];
        let ym = cand_y[attempt / cand_x.len()];
        let children = [
            Rect::new(rect.x0, rect.y0, xm, ym),
            Rect::new(xm, rect.y0, rect.x1, ym),
            Rect::new(rect.x0, ym, xm, rect.y1),
            Rect::new(xm, ym, rect.x1, rect.y1),
        ];
        let mut counted = Vec::with_capacity(4);
        let mut ok = true;
        for child in &children {
            let child = match child {
                Ok(c) => *c,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let spec = ContourSpec::rectangle(child).with_initial_segments(32);
            match count_zeros(func, &spec) {
                Ok(zc) => counted.push((child, zc)),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let total: i64 = counted.iter().map(|(_, zc)| zc.zeros).sum();
        if total != count {
            continue;
        }
        for (child, zc) in counted {
            isolate_in_box(
                func,
                child,
                zc.zeros,
                tail_robust && zc.winding.tail_robust,
                state,
            )?;
        }
        return Ok(());
    }
    Err(Error::SubdivisionExhausted {
        index: count,
        max_turn: 0.0,
    })
}

fn merge_records<R: Real>(mut records: Vec<ZeroRecord<R>>) -> Vec<ZeroRecord<R>> {
    records.sort_by(|a, b| {
        a.location
            .re
            .partial_cmp(&b.location.re)
            .unwrap()
            .then(a.location.im.partial_cmp(&b.location.im).unwrap())
    });
    let mut out: Vec<ZeroRecord<R>> = Vec::with_capacity(records.len());
    for rec in records {
        let tol = R::of(ZERO_MERGE_TOL) * (R::one() + rec.location.norm());
        if let Some(last) = out.last_mut() {
            if (last.location - rec.location).norm() <= tol {
                last.multiplicity += rec.multiplicity;
                if rec.residual < last.residual {
                    last.location = rec.location;
                    last.residual = rec.residual;
                    last.local_scale = rec.local_scale;
                    last.iterations = rec.iterations;
                }
                continue;
            }
        }
        out.push(rec);
    }
    out
}

/// Find all zeros of `func` in a rectangle by quadtree subdivision: boxes
/// counting zero are discarded, boxes counting one are refined by Newton
/// (centroid seed, then the three lowest-|f| corners, then real-axis
/// bisection for conjugation-symmetric functions), and clusters below the
/// minimum box size are reported unresolved. The returned multiset accounts
/// exactly for the certified top-level count.
pub fn isolate_zeros<R: Real>(
    func: &impl Meromorphic<R>,
    region: &Rect<R>,
) -> Result<Vec<ZeroRecord<R>>> {
    let spec = ContourSpec::rectangle(*region);
    let top = count_zeros(func, &spec)?;
    let mut state = IsolateState {
        records: Vec::new(),
        boxes_used: 0,
    };
    isolate_in_box(
        func,
        *region,
        top.zeros,
        top.winding.tail_robust,
        &mut state,
    )?;
    Ok(merge_records(state.records))
}

/// Outcome of searching one dyadic annulus `|1 − z| ∈ [2^{-j-1}, 2^{-j}]`.
#[derive(Debug, Clone, PartialEq)]
pub enum AnnulusStatus<R: Real> {
    /// At least one certified, tail-robust zero.
    Found(Vec<ZeroRecord<R>>),
    /// Certified count of zero for the evaluated truncation; `tail_robust`
    /// additionally transfers the absence to the untruncated field.
    NoneFound { tail_robust: bool },
    /// The search could not certify the annulus (for example the field is
    /// below its own truncation remainder there); any uncertified candidates
    /// are listed.
    Uncertified {
        reason: String,
        candidates: Vec<ZeroRecord<R>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusReport<R: Real> {
    pub j: u32,
    pub inner: R,
    pub outer: R,
    pub status: AnnulusStatus<R>,
}

/// Result of the boundary-approach search.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryZeroSequence<R: Real> {
    pub annuli: Vec<AnnulusReport<R>>,
    /// All certified zeros, ordered by decreasing `|1 − z|`.
    pub zeros: Vec<ZeroRecord<R>>,
}

/// Hunt for zeros approaching the boundary point 1 of a disc-model family:
/// for `j = 1..=depth` the dyadic annulus `|1 − z| ∈ [2^{-j-1}, 2^{-j}]` is
/// covered by a slab box and searched with [`isolate_zeros`]. Absence of
/// zeros in an annulus is recorded, not fatal. Every returned record
/// satisfies `Re z < 1`.
pub fn zero_sequence_toward_boundary<R: Real>(
    config: &ChargeConfiguration<R>,
    depth: u32,
) -> Result<BoundaryZeroSequence<R>> {
    if config.model() != Model::Disc {
        return Err(Error::ModelMismatch {
            expected: "disc",
            found: config.model().name(),
        });
    }
    match config.family() {
        Some(f) if f.accumulates_at_one() => {}
        _ => {
            return Err(Error::DomainError(
                "boundary search requires a family accumulating at 1".into(),
            ))
        }
    }
    if depth == 0 {
        return Err(Error::DomainError("depth must be positive".into()));
    }

    let one = R::one();
    let half = R::of(0.5);
    type SlabOutcome<R> = std::result::Result<(Vec<ZeroRecord<R>>, bool), String>;
    let mut per_slab: Vec<(u32, SlabOutcome<R>)> = Vec::new();
    for j in 1..=depth {
        let outer = half.powi(j as i32);
        let inner = outer * half;
        let gap = outer - inner;
        let mut outcome: SlabOutcome<R> = Err("slab construction failed".into());
        // Widen the slab in eighth-gap steps until its edges sit clear of the
        // charges; any positional failure (edge through a charge, a pole too
        // close to the contour for certifiable sampling, an unlucky split)
        // just moves to the next placement. Overlap between neighboring
        // slabs is fine: records are bucketed by |1 - z| afterwards.
        'attempts: for grow in 1..=6 {
            let d = gap * R::of(grow as f64 / 8.0);
            let rect = match Rect::new(
                one - outer - d,
                -(outer + d),
                one - inner + d,
                outer + d,
            ) {
                Ok(r) => r,
                Err(e) => {
                    outcome = Err(e.to_string());
                    continue;
                }
            };
            let counted = match count_zeros(config, &ContourSpec::rectangle(rect)) {
                Ok(zc) => zc,
                Err(e) => {
                    outcome = Err(e.to_string());
                    continue;
                }
            };
            if counted.zeros == 0 {
                outcome = Ok((vec![], counted.winding.tail_robust));
                break 'attempts;
            }
            match isolate_zeros(config, &rect) {
                Ok(records) => {
                    outcome = Ok((records, counted.winding.tail_robust));
                    break 'attempts;
                }
                Err(e) => {
                    outcome = Err(e.to_string());
                    continue;
                }
            }
        }
        per_slab.push((j, outcome));
    }

    // bucket by modulus |1 - z|
    let mut reports = Vec::with_capacity(depth as usize);
    let mut all_found: Vec<ZeroRecord<R>> = Vec::new();
    for &(j, ref outcome) in &per_slab {
        let outer = half.powi(j as i32);
        let inner = outer * half;
        let status = match outcome {
            Err(reason) => AnnulusStatus::Uncertified {
                reason: reason.clone(),
                candidates: vec![],
            },
            Ok((_, slab_robust)) => {
                // gather every record (from any slab) whose modulus lands here
                let mut bucket: Vec<ZeroRecord<R>> = Vec::new();
                for (_, oc) in &per_slab {
                    if let Ok((records, _)) = oc {
                        for rec in records {
                            // half-open [inner, outer): a zero on a dyadic
                            // boundary belongs to exactly one annulus
                            let t = (Complex::new(one, R::zero()) - rec.location).norm();
                            if t >= inner && t < outer {
                                let mut r = rec.clone();
                                r.annulus = Some(j);
                                bucket.push(r);
                            }
                        }
                    }
                }
                let mut bucket = merge_records(bucket);
                for r in &mut bucket {
                    r.annulus = Some(j);
                }
                bucket.retain(|r| r.location.re < one);
                if bucket.is_empty() {
                    AnnulusStatus::NoneFound {
                        tail_robust: *slab_robust,
                    }
                } else if bucket.iter().any(|r| r.certified && r.tail_robust) {
                    all_found.extend(bucket.iter().cloned());
                    AnnulusStatus::Found(bucket)
                } else {
                    AnnulusStatus::Uncertified {
                        reason: "candidates below tail resolution".into(),
                        candidates: bucket,
                    }
                }
            }
        };
        reports.push(AnnulusReport {
            j,
            inner,
            outer,
            status,
        });
    }

    let mut zeros = merge_records(all_found);
    zeros.sort_by(|a, b| {
        let ta = (Complex::new(one, R::zero()) - a.location).norm();
        let tb = (Complex::new(one, R::zero()) - b.location).norm();
        tb.partial_cmp(&ta).unwrap()
    });
    Ok(BoundaryZeroSequence {
        annuli: reports,
        zeros,
    })
}
