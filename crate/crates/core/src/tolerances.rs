//! Numerical tolerances used across the crate, collected in one place.
//!
//! Values are stated in `f64`; generic code converts through [`crate::Real::of`].

/// Relative pole-proximity guard: evaluation refuses points within
/// `POLE_PROXIMITY_REL * (1 + |z|)` of a charge location. Below this distance
/// the floating division carries no information.
pub const POLE_PROXIMITY_REL: f64 = 1e-14;

/// Absolute pole guard for the closed-form counterexample function, whose
/// poles all have moderate magnitude.
pub const CLOSED_FORM_POLE_TOL: f64 = 1e-12;

/// Contours must keep `CONTOUR_CLEARANCE_REL * scale` away from charge
/// locations, where `scale` is the contour size (radius or box diagonal).
pub const CONTOUR_CLEARANCE_REL: f64 = 1e-8;

/// Multiplicative radius nudge (2^-10) applied when a charge sits on a circle
/// contour. Nudges are reported in the winding result.
pub const RADIUS_NUDGE: f64 = 0.0009765625;

/// Newton stops when `|f| <= NEWTON_RESIDUAL_REL * |f'| * (1 + |z|)`.
pub const NEWTON_RESIDUAL_REL: f64 = 1e-12;

/// Newton stops when the step falls below `NEWTON_STEP_REL * (1 + |z|)`.
pub const NEWTON_STEP_REL: f64 = 1e-14;

/// Iteration cap for Newton refinement.
pub const NEWTON_MAX_ITER: usize = 50;

/// Refined zeros closer than `ZERO_MERGE_TOL * (1 + |z|)` are merged as
/// duplicates (the same zero reached twice, e.g. from overlapping searches).
/// This matches the subdivision resolution floor [`MIN_BOX_SIZE`]: distinct
/// zeros above that separation are resolved into disjoint certified boxes
/// and must not be fused, or the records would stop accounting for the
/// contour counts (neighboring zeros of boundary-accumulating families sit
/// closer than 1e-9 while refinement jitter stays near machine precision).
pub const ZERO_MERGE_TOL: f64 = 1e-12;

/// Quadtree subdivision stops at boxes of size `MIN_BOX_SIZE * (1 + |center|)`;
/// unresolved clusters below that are reported, not split further.
pub const MIN_BOX_SIZE: f64 = 1e-12;

/// A refined zero is residual-certified when
/// `|f(eta)| <= CERTIFIED_RESIDUAL_REL * |f'(eta)| * (1 + |eta|)`, i.e. the
/// implied location error is at most 1e-9 relative.
pub const CERTIFIED_RESIDUAL_REL: f64 = 1e-9;

/// Boundary-neighborhood radius used by the hypothesis checks when the caller
/// does not supply one.
pub const DEFAULT_STOLZ_EPSILON: f64 = 0.5;

/// Default number of contour segments before adaptive refinement.
pub const DEFAULT_INITIAL_SEGMENTS: usize = 64;

/// Default cap on per-segment subdivision depth.
pub const DEFAULT_MAX_SUBDIVISION_DEPTH: usize = 24;

/// Winding samples with modulus below this are treated as a contour through a
/// zero. Kept tiny: legitimate values can be small (exponential decay) without
/// being zero.
pub const WINDING_MIN_MODULUS: f64 = 1e-290;
