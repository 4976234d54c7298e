//! Convex-hull containment of zeros.
//!
//! For positive weights every zero of the field lies in the convex hull of
//! the charge locations: any half-plane with all charges strictly on one side
//! forces `Re Σ a_k/(z − z_k)` to a fixed sign after rotating that side onto
//! `Re > 0`. The check here is the numerical version with a small relative
//! tolerance so refined zeros on a hull edge (or on the segment of a
//! collinear configuration) are accepted.

use crate::charge::ChargeConfiguration;
use crate::contour::ZeroRecord;
use crate::scalar::Real;
use num_complex::Complex;

/// Relative tolerance for hull membership of numerically refined zeros.
pub const HULL_CONTAINMENT_REL: f64 = 1e-9;

fn cross<R: Real>(o: Complex<R>, a: Complex<R>, b: Complex<R>) -> R {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Monotone-chain convex hull (counterclockwise, no repeated endpoint).
/// Collinear inputs reduce to the two extreme points; a single point stays a
/// single point.
pub fn convex_hull<R: Real>(points: &[Complex<R>]) -> Vec<Complex<R>> {
    let mut pts: Vec<Complex<R>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex<R>> = Vec::with_capacity(n);
    for &p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= R::zero()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex<R>> = Vec::with_capacity(n);
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= R::zero()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // all points collinear; the extremes are the hull
        return vec![pts[0], pts[n - 1]];
    }
    lower
}

fn segment_distance<R: Real>(p: Complex<R>, a: Complex<R>, b: Complex<R>) -> R {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == R::zero() {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.max(R::zero()).min(R::one());
    (p - (a + ab * t)).norm()
}

/// Membership of `p` in the convex hull (degenerate hulls fall back to
/// point/segment distance), with absolute tolerance `tol`.
pub fn hull_contains<R: Real>(hull: &[Complex<R>], p: Complex<R>, tol: R) -> bool {
    match hull.len() {
        0 => false,
        1 => (p - hull[0]).norm() <= tol,
        2 => segment_distance(p, hull[0], hull[1]) <= tol,
        n => {
            for i in 0..n {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                let edge = (b - a).norm();
                // signed distance to the edge line; hull is counterclockwise
                if cross(a, b, p) < -tol * edge {
                    return false;
                }
            }
            true
        }
    }
}

/// Check each zero record against the convex hull of the charge locations.
pub fn convex_hull_containment<R: Real>(
    zeros: &[ZeroRecord<R>],
    config: &ChargeConfiguration<R>,
) -> Vec<bool> {
    let points: Vec<Complex<R>> = config.charges().iter().map(|c| c.location).collect();
    let hull = convex_hull(&points);
    let tol = R::of(HULL_CONTAINMENT_REL) * (R::one() + config.diameter());
    zeros
        .iter()
        .map(|z| hull_contains(&hull, z.location, tol))
        .collect()
}
