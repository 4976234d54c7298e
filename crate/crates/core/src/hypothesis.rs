//! Boundary-convergence hypothesis checks and sector probes.
//!
//! For a disc-model family accumulating at 1, a zero sequence approaching 1
//! is guaranteed when (i) the weights are summable, (ii) the location
//! distances `|1 − z_k|` have exponent of convergence λ, and (iii) all
//! approach angles near 1 stay strictly below the threshold `C(λ) = π/(2λ)`
//! (unbounded for λ = 0). The sharper sector threshold
//! `C(λ, σ) = (2/λ)·arcsin(√(σ/2))` reduces to `C(λ)` at σ = 1. The explicit
//! zero-free configuration sits exactly at the threshold (λ = 1, approach
//! angle π/2 = C(1)), so the strict inequality is what separates the two
//! behaviors: equality must report failure.

use crate::charge::ChargeConfiguration;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::scalar::Real;
use crate::tolerances::DEFAULT_STOLZ_EPSILON;
use crate::Model;
use num_complex::Complex;

/// A positive threshold or "no constraint".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold<R: Real> {
    Unbounded,
    Finite(R),
}

impl<R: Real> Threshold<R> {
    /// Strict comparison `sup < threshold` (always true for `Unbounded`).
    pub fn admits(&self, sup: R) -> bool {
        match *self {
            Threshold::Unbounded => true,
            Threshold::Finite(c) => sup < c,
        }
    }

    pub fn finite(&self) -> Option<R> {
        match *self {
            Threshold::Unbounded => None,
            Threshold::Finite(c) => Some(c),
        }
    }
}

impl<R: Real> std::fmt::Display for Threshold<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Threshold::Unbounded => f.write_str("unbounded"),
            Threshold::Finite(c) => write!(f, "{c}"),
        }
    }
}

/// Stolz-angle threshold `C(λ) = π/(2λ)`, unbounded at λ = 0.
pub fn threshold_c<R: Real>(lambda: R) -> Result<Threshold<R>> {
    if lambda < R::zero() || !lambda.is_finite() {
        return Err(Error::DomainError("lambda must be finite and >= 0".into()));
    }
    if lambda == R::zero() {
        return Ok(Threshold::Unbounded);
    }
    Ok(Threshold::Finite(R::PI() / (R::of(2.0) * lambda)))
}

/// Sector threshold `C(λ, σ) = (2/λ)·arcsin(√(σ/2))` for σ ∈ (0, 1];
/// `C(λ, 1) = C(λ)` identically.
pub fn threshold_c2<R: Real>(lambda: R, sigma: R) -> Result<Threshold<R>> {
    if lambda < R::zero() || !lambda.is_finite() {
        return Err(Error::DomainError("lambda must be finite and >= 0".into()));
    }
    if !(sigma > R::zero() && sigma <= R::one()) {
        return Err(Error::DomainError("sigma must lie in (0, 1]".into()));
    }
    if lambda == R::zero() {
        return Ok(Threshold::Unbounded);
    }
    let value = R::of(2.0) / lambda * (sigma * R::of(0.5)).sqrt().asin();
    Ok(Threshold::Finite(value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaSource {
    /// Analytic value carried by the generator.
    Declared,
    /// Bracketed numerically from the stored charges; non-rigorous.
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEstimate<R: Real> {
    pub value: R,
    pub source: LambdaSource,
}

/// Exponent of convergence of the boundary distances: the declared value for
/// generator-backed configurations, otherwise a heuristic bracket of the
/// divergence/convergence transition of `Σ t_k^τ` over the grid.
///
/// Explicit finite configurations converge for every τ, so they report λ = 0
/// as declared.
pub fn exponent_of_convergence<R: Real>(
    config: &ChargeConfiguration<R>,
    tau_grid: &[R],
) -> LambdaEstimate<R> {
    if let Some(family) = config.family() {
        return LambdaEstimate {
            value: family.declared_lambda(),
            source: LambdaSource::Declared,
        };
    }
    let ts = boundary_distances(config);
    match estimate_lambda_bracket(&ts, tau_grid) {
        Some((lo, hi)) => LambdaEstimate {
            value: (lo + hi) * R::of(0.5),
            source: LambdaSource::Heuristic,
        },
        None => LambdaEstimate {
            value: R::zero(),
            source: LambdaSource::Declared,
        },
    }
}

fn boundary_distances<R: Real>(config: &ChargeConfiguration<R>) -> Vec<R> {
    let one = Complex::new(R::one(), R::zero());
    let mut ts: Vec<R> = config
        .charges()
        .iter()
        .map(|c| match config.model() {
            Model::Disc => (one - c.location).norm(),
            Model::HalfPlane => c.location.norm().recip(),
        })
        .filter(|t| *t > R::zero())
        .collect();
    // largest first, so partial sums add terms in decreasing size
    ts.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ts
}

/// Heuristic bracket for the exponent of convergence from finitely many
/// distances: for each τ the growth ratio of successive partial-sum blocks of
/// `Σ t_k^τ` classifies the exponent τ as divergent-looking (ratio near or
/// above 1) or convergent-looking. Returns the bracketing (largest divergent,
/// smallest convergent) grid values. Finite data cannot decide convergence;
/// callers must treat this as evidence only.
pub fn estimate_lambda_bracket<R: Real>(ts: &[R], tau_grid: &[R]) -> Option<(R, R)> {
    let n = ts.len();
    if n < 16 || tau_grid.is_empty() {
        return None;
    }
    let mut grid: Vec<R> = tau_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let block = |tau: R, from: usize, to: usize| -> R {
        let mut acc = KahanSum::new();
        for &t in &ts[from..to] {
            acc.add(t.powf(tau));
        }
        acc.value()
    };
    let q1 = n / 4;
    let q2 = n / 2;
    let mut last_divergent: Option<R> = None;
    let mut first_convergent: Option<R> = None;
    for &tau in &grid {
        if tau <= R::zero() || tau.is_nan() {
            continue;
        }
        let inc_old = block(tau, q1, q2);
        let inc_new = block(tau, q2, n);
        if inc_old <= R::zero() {
            continue;
        }
        // for t_k ~ k^{-1/λ} the block ratio is 2^{1-τ/λ}: above ~1 means
        // the increments are not shrinking (divergent-looking)
        let ratio = inc_new / inc_old;
        if ratio >= R::of(0.97) {
            last_divergent = Some(tau);
        } else if first_convergent.is_none() {
            first_convergent = Some(tau);
        }
    }
    match (last_divergent, first_convergent) {
        (Some(lo), Some(hi)) if lo < hi => Some((lo, hi)),
        (None, Some(hi)) => Some((R::zero(), hi)),
        _ => None,
    }
}

/// Supremum of approach angles near the boundary point 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StolzSup<R: Real> {
    pub sup: R,
    /// Stored charges with `|1 − z_k| <= ε`.
    pub charges_in_neighborhood: usize,
    /// No stored charge fell in the neighborhood (sup from the generator
    /// limit alone, or 0).
    pub empty_neighborhood: bool,
    /// The generator's limiting angle participated in the sup.
    pub includes_family_limit: bool,
}

/// `sup |arg(1 − z_k)|` over stored charges with `|1 − z_k| <= ε`, combined
/// with the generator's analytic limit angle when present.
pub fn stolz_angle_sup<R: Real>(
    config: &ChargeConfiguration<R>,
    epsilon: R,
) -> Result<StolzSup<R>> {
    if config.model() != Model::Disc {
        return Err(Error::ModelMismatch {
            expected: "disc",
            found: config.model().name(),
        });
    }
    if epsilon <= R::zero() || epsilon.is_nan() {
        return Err(Error::DomainError("epsilon must be positive".into()));
    }
    let one = Complex::new(R::one(), R::zero());
    let mut sup = R::zero();
    let mut count = 0usize;
    for c in config.charges() {
        let d = one - c.location;
        let t = d.norm();
        if t > R::zero() && t <= epsilon {
            count += 1;
            sup = sup.max(d.arg().abs());
        }
    }
    let mut includes_family_limit = false;
    if let Some(family) = config.family() {
        let limit = family.limit_angle();
        if limit > sup {
            sup = limit;
            includes_family_limit = true;
        }
    }
    Ok(StolzSup {
        sup,
        charges_in_neighborhood: count,
        empty_neighborhood: count == 0,
        includes_family_limit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    Unknown,
}

impl std::fmt::Display for ConditionStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConditionStatus::Pass => "pass",
            ConditionStatus::Fail => "fail",
            ConditionStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HypothesesHold,
    HypothesesFail,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::HypothesesHold => "hypotheses-hold",
            Verdict::HypothesesFail => "hypotheses-fail",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// Assembled report on the boundary zero-sequence hypotheses.
///
/// The sharp form of the hypotheses constrains only all but finitely many
/// charges; the report treats every stored charge (plus the generator limit)
/// uniformly, which is the conservative direction.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<R: Real> {
    pub lambda: R,
    pub lambda_source: LambdaSource,
    pub epsilon: R,
    pub stolz_sup: R,
    pub threshold: Threshold<R>,
    /// Summable weights with a finite tail bound.
    pub summable_weights: ConditionStatus,
    /// Finite exponent of convergence for the chosen neighborhood.
    pub condition_exponent: ConditionStatus,
    /// Strict Stolz-angle inequality `sup < C(λ)`.
    pub condition_angle: ConditionStatus,
    /// The configuration accumulates at the boundary point 1.
    pub accumulates_at_one: bool,
    pub empty_neighborhood: bool,
    pub verdict: Verdict,
}

/// Default τ grid for the heuristic exponent estimator.
pub fn default_tau_grid<R: Real>() -> Vec<R> {
    (1..=32).map(|i| R::of(i as f64 * 0.125)).collect()
}

/// Check the zero-sequence hypotheses for a disc configuration at
/// neighborhood radius ε (default [`DEFAULT_STOLZ_EPSILON`]).
///
/// The verdict is `hypotheses-hold` only with a declared λ, strict angle
/// inequality, summable weights, and boundary accumulation; a heuristic λ can
/// never certify `hold`. Equality at the threshold fails.
pub fn check_hypotheses<R: Real>(
    config: &ChargeConfiguration<R>,
    epsilon: Option<R>,
) -> Result<HypothesisReport<R>> {
    let epsilon = epsilon.unwrap_or_else(|| R::of(DEFAULT_STOLZ_EPSILON));
    let lambda = exponent_of_convergence(config, &default_tau_grid::<R>());
    let stolz = stolz_angle_sup(config, epsilon)?;
    let threshold = threshold_c(lambda.value)?;

    let summable = if config.total_weight().is_finite() && config.weight_tail_bound().is_finite()
    {
        ConditionStatus::Pass
    } else {
        ConditionStatus::Fail
    };
    let condition_exponent = match lambda.source {
        LambdaSource::Declared => ConditionStatus::Pass,
        LambdaSource::Heuristic => ConditionStatus::Unknown,
    };
    let condition_angle = if threshold.admits(stolz.sup) {
        ConditionStatus::Pass
    } else {
        ConditionStatus::Fail
    };
    let accumulates = config
        .family()
        .map(|f| f.accumulates_at_one())
        .unwrap_or(false);

    let verdict = if condition_angle == ConditionStatus::Fail
        || summable == ConditionStatus::Fail
    {
        Verdict::HypothesesFail
    } else if condition_exponent == ConditionStatus::Pass
        && condition_angle == ConditionStatus::Pass
        && summable == ConditionStatus::Pass
        && accumulates
    {
        Verdict::HypothesesHold
    } else {
        Verdict::Indeterminate
    };

    Ok(HypothesisReport {
        lambda: lambda.value,
        lambda_source: lambda.source,
        epsilon,
        stolz_sup: stolz.sup,
        threshold,
        summable_weights: summable,
        condition_exponent,
        condition_angle,
        accumulates_at_one: accumulates,
        empty_neighborhood: stolz.empty_neighborhood,
        verdict,
    })
}

/// Finite sampling evidence along rays (never a proof).
#[derive(Debug, Clone, PartialEq)]
pub struct SectorProbe<R: Real> {
    /// Sector half-angle the probe ran outside of (π for the negative axis).
    pub angle_s0: R,
    pub radius_range: (R, R),
    /// Max sampled `|F|` (lemma-style boundedness evidence).
    pub observed_sup: R,
    /// Min sampled `r·|F(−r)|` (positivity evidence).
    pub observed_liminf: R,
    /// Samples as (radius, value) pairs; value is `r·|F(−r)|` for the
    /// negative-axis probe and `|F|` for the sector probe.
    pub samples: Vec<(R, R)>,
    /// `Σ a_k w_k` — the naive termwise limit of `−r·F(−r)`. For unbounded
    /// pole families this need not be the true limit: mass can escape along
    /// the pole sequence (the zero-free example has coefficient sum 1/2 but
    /// true limit 1).
    pub coefficient_sum: Option<Complex<R>>,
}

/// Sample `r·|F(−r)|` on the negative real axis. Positivity of every sample
/// is the desk-scale echo of `liminf r·|F(−r)| > 0`, which holds whenever all
/// `Re w_k > 0` because each term contributes `Re(w_k/(r + w_k)) > 0`.
pub fn lemma0_probe<R: Real>(
    config: &ChargeConfiguration<R>,
    r_values: &[R],
) -> Result<SectorProbe<R>> {
    if config.model() != Model::HalfPlane {
        return Err(Error::ModelMismatch {
            expected: "half-plane",
            found: config.model().name(),
        });
    }
    if r_values.is_empty() {
        return Err(Error::DomainError("r_values must be non-empty".into()));
    }
    let mut prev = R::zero();
    for &r in r_values {
        if r <= prev || r.is_nan() {
            return Err(Error::DomainError(
                "r_values must be positive and increasing".into(),
            ));
        }
        prev = r;
    }
    let mut samples = Vec::with_capacity(r_values.len());
    let mut liminf = R::infinity();
    let mut sup = R::zero();
    for &r in r_values {
        let f = config.halfplane_field(Complex::new(-r, R::zero()))?;
        let scaled = r * f.value.norm();
        samples.push((r, scaled));
        liminf = liminf.min(scaled);
        sup = sup.max(f.value.norm());
    }
    let mut coeff = crate::kahan::ComplexKahanSum::new();
    for c in config.charges() {
        coeff.add(c.location * c.weight);
    }
    Ok(SectorProbe {
        angle_s0: R::PI(),
        radius_range: (r_values[0], *r_values.last().unwrap()),
        observed_sup: sup,
        observed_liminf: liminf,
        samples,
        coefficient_sum: Some(coeff.value()),
    })
}

/// Sample `|F|` on the rays `arg w = ±s0` and on the negative axis at the
/// given radii: boundedness evidence outside the pole sector. Requires `s0`
/// strictly above the configuration's `sup |arg w_k|`.
pub fn lemma1_probe<R: Real>(
    config: &ChargeConfiguration<R>,
    s0: R,
    radii: &[R],
) -> Result<SectorProbe<R>> {
    if config.model() != Model::HalfPlane {
        return Err(Error::ModelMismatch {
            expected: "half-plane",
            found: config.model().name(),
        });
    }
    if radii.is_empty() {
        return Err(Error::DomainError("radii must be non-empty".into()));
    }
    let sup_angle = config
        .charges()
        .iter()
        .map(|c| c.location.arg().abs())
        .fold(R::zero(), R::max);
    if !(s0 > sup_angle && s0 <= R::PI()) {
        return Err(Error::DomainError(format!(
            "s0 must exceed the pole angle sup {} and be at most pi",
            sup_angle
        )));
    }
    let dirs = [
        Complex::new(s0.cos(), s0.sin()),
        Complex::new(s0.cos(), -s0.sin()),
        Complex::new(-R::one(), R::zero()),
    ];
    let mut samples = Vec::with_capacity(radii.len());
    let mut sup = R::zero();
    let mut liminf = R::infinity();
    for &r in radii {
        if r <= R::zero() || r.is_nan() {
            return Err(Error::DomainError("radii must be positive".into()));
        }
        let mut worst = R::zero();
        for d in dirs {
            let f = config.halfplane_field(d * r)?;
            worst = worst.max(f.value.norm());
        }
        samples.push((r, worst));
        sup = sup.max(worst);
        liminf = liminf.min(r * worst);
    }
    Ok(SectorProbe {
        angle_s0: s0,
        radius_range: (radii[0], *radii.last().unwrap()),
        observed_sup: sup,
        observed_liminf: liminf,
        samples,
        coefficient_sum: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::PointCharge;
    use crate::scalar::complex;
    use crate::{ChargeConfiguration, Family};

    #[test]
    fn threshold_values() {
        let pi = std::f64::consts::PI;
        assert_eq!(
            threshold_c(2.0f64).unwrap().finite().unwrap(),
            pi / 4.0
        );
        assert!(matches!(
            threshold_c(0.0f64).unwrap(),
            Threshold::Unbounded
        ));
        // C(λ, 1) = C(λ)
        let c2 = threshold_c2(1.0f64, 1.0).unwrap().finite().unwrap();
        assert!((c2 - pi / 2.0).abs() < 1e-15);
        // C(2, 1/2) = arcsin(1/2) = π/6
        let c2 = threshold_c2(2.0f64, 0.5).unwrap().finite().unwrap();
        assert!((c2 - pi / 6.0).abs() < 1e-15);
        assert!(threshold_c2(1.0f64, 0.0).is_err());
        assert!(threshold_c2(1.0f64, 1.5).is_err());
        assert!(threshold_c(-1.0f64).is_err());
    }

    fn geometric(n: usize) -> ChargeConfiguration<f64> {
        ChargeConfiguration::from_family(
            Family::Geometric {
                ratio: 0.5,
                count: n,
            },
            Model::Disc,
        )
        .unwrap()
    }

    #[test]
    fn declared_lambdas() {
        let grid = default_tau_grid::<f64>();
        assert_eq!(exponent_of_convergence(&geometric(10), &grid).value, 0.0);

        let pl = ChargeConfiguration::from_family(
            Family::PowerLaw {
                exponent: 0.5,
                angle: 0.0,
                count: 50,
            },
            Model::Disc,
        )
        .unwrap();
        let est = exponent_of_convergence(&pl, &grid);
        assert_eq!(est.value, 2.0);
        assert_eq!(est.source, LambdaSource::Declared);

        let ce = ChargeConfiguration::from_family(
            Family::Counterexample { half_width: 32 },
            Model::Disc,
        )
        .unwrap();
        assert_eq!(exponent_of_convergence(&ce, &grid).value, 1.0);
    }

    #[test]
    fn heuristic_brackets_power_law() {
        // t_k = k^{-1/2}: λ = 2
        let ts: Vec<f64> = (1..=4000).map(|k| (k as f64).powf(-0.5)).collect();
        let grid = default_tau_grid::<f64>();
        let (lo, hi) = estimate_lambda_bracket(&ts, &grid).unwrap();
        assert!(lo <= 2.0 + 1e-12 && 2.0 <= hi + 0.3, "bracket [{lo}, {hi}]");
        assert!(hi - lo < 0.5);

        // t_k = 1/(2k+1)π-ish: λ = 1
        let ts: Vec<f64> = (1..=4000)
            .map(|k| 1.0 / ((2 * k + 1) as f64 * std::f64::consts::PI))
            .collect();
        let (lo, hi) = estimate_lambda_bracket(&ts, &grid).unwrap();
        assert!(lo <= 1.0 + 1e-12 && 1.0 <= hi, "bracket [{lo}, {hi}]");

        // geometric decay: λ = 0
        let ts: Vec<f64> = (1..=200).map(|k| 0.5f64.powi(k)).collect();
        if let Some((lo, hi)) = estimate_lambda_bracket(&ts, &grid) {
            assert!(hi <= 0.5, "bracket [{lo}, {hi}]");
        }
    }

    #[test]
    fn stolz_sup_cases() {
        let s = stolz_angle_sup(&geometric(20), 0.5).unwrap();
        assert_eq!(s.sup, 0.0);
        assert!(!s.empty_neighborhood);

        let pl = ChargeConfiguration::from_family(
            Family::PowerLaw {
                exponent: 2.0,
                angle: std::f64::consts::FRAC_PI_3,
                count: 30,
            },
            Model::Disc,
        )
        .unwrap();
        let s = stolz_angle_sup(&pl, 0.5).unwrap();
        assert!((s.sup - std::f64::consts::FRAC_PI_3).abs() < 1e-12);

        let ce = ChargeConfiguration::from_family(
            Family::Counterexample { half_width: 16 },
            Model::Disc,
        )
        .unwrap();
        let s = stolz_angle_sup(&ce, 0.5).unwrap();
        assert_eq!(s.sup, std::f64::consts::FRAC_PI_2);
        assert!(s.includes_family_limit);

        // empty neighborhood flag
        let far = ChargeConfiguration::new(
            Model::Disc,
            vec![PointCharge::new(1.0, complex(-0.9, 0.0))],
        )
        .unwrap();
        let s = stolz_angle_sup(&far, 0.5).unwrap();
        assert!(s.empty_neighborhood);
        assert_eq!(s.sup, 0.0);
    }

    #[test]
    fn hypothesis_verdicts() {
        let r = check_hypotheses(&geometric(40), None).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesesHold);
        assert!(matches!(r.threshold, Threshold::Unbounded));

        let pl = ChargeConfiguration::from_family(
            Family::PowerLaw {
                exponent: 0.5,
                angle: std::f64::consts::FRAC_PI_3,
                count: 50,
            },
            Model::Disc,
        )
        .unwrap();
        let r = check_hypotheses(&pl, None).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesesFail);

        let ce = ChargeConfiguration::<f64>::from_family(
            Family::Counterexample { half_width: 32 },
            Model::Disc,
        )
        .unwrap();
        let r = check_hypotheses(&ce, None).unwrap();
        // sup = π/2 equals C(1) = π/2: strict inequality fails
        assert_eq!(r.verdict, Verdict::HypothesesFail);
        assert_eq!(r.stolz_sup, r.threshold.finite().unwrap());
    }

    #[test]
    fn threshold_monotonicity() {
        // C strictly decreasing in lambda
        let lambdas: Vec<f64> = (1..=16).map(|i| 0.25 * i as f64).collect();
        for pair in lambdas.windows(2) {
            let a = threshold_c(pair[0]).unwrap().finite().unwrap();
            let b = threshold_c(pair[1]).unwrap().finite().unwrap();
            assert!(b < a);
        }
        // C2 strictly increasing in sigma
        let sigmas: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
        for pair in sigmas.windows(2) {
            let a = threshold_c2(1.0, pair[0]).unwrap().finite().unwrap();
            let b = threshold_c2(1.0, pair[1]).unwrap().finite().unwrap();
            assert!(b > a);
        }
    }

    #[test]
    fn lemma0_single_term() {
        let cfg = ChargeConfiguration::new(
            Model::HalfPlane,
            vec![PointCharge::new(1.0, complex(1.0, 0.0))],
        )
        .unwrap();
        let rs: Vec<f64> = (1..=10).map(|i| 10f64.powf(1.0 + 0.3 * i as f64)).collect();
        let probe = lemma0_probe(&cfg, &rs).unwrap();
        // r F(-r) = -r/(r+1): min over r in [10, 10^4] is at r = 10
        assert!(probe.observed_liminf >= 0.9);
        for (r, v) in &probe.samples {
            assert!(*v > 0.0);
            assert!((v - r / (r + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn lemma1_single_term_bound() {
        let cfg = ChargeConfiguration::new(
            Model::HalfPlane,
            vec![PointCharge::new(1.0, complex(1.0, 0.0))],
        )
        .unwrap();
        let radii: Vec<f64> = vec![10.0, 100.0, 1000.0];
        let probe = lemma1_probe(&cfg, std::f64::consts::FRAC_PI_2, &radii).unwrap();
        // |F| = |w_1|/|w - w_1| <= 1/(|w| - 1) on the imaginary axis
        assert!(probe.observed_sup <= 0.2);
    }

    #[test]
    fn lemma1_rejects_small_sector() {
        let ce = ChargeConfiguration::from_family(
            Family::Counterexample { half_width: 16 },
            Model::HalfPlane,
        )
        .unwrap();
        let err = lemma1_probe(&ce, std::f64::consts::FRAC_PI_4, &[10.0f64]).unwrap_err();
        assert!(matches!(err, Error::DomainError(_)));
    }
}
