//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured quantities (run with `-- --nocapture` to see the lines).

use equilib_core::*;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};
use std::time::Instant;

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "[criterion {n}] {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Residue identity a = b + Σ c_k on the truncation, against the rigorous
/// tail bound and an independent high-resolution summation oracle.
#[test]
fn criterion_1_residue_identity() {
    let t0 = Instant::now();
    let n = 1_000_000usize;
    let model = CounterexampleModel64::new(n).unwrap();
    let id = model.residue_identity();
    let elapsed = t0.elapsed();

    // independent oracle: direct pair summation at 1e7 with the midpoint
    // integral tail correction (accurate to O(1/N^3))
    let pi = std::f64::consts::PI;
    let mut s = 0.0f64;
    let mut comp = 0.0f64;
    for k in (0..10_000_000i64).rev() {
        let m = (2 * k + 1) as f64 * pi;
        let v = 2.0 / (m * m + 1.0);
        let y = v - comp;
        let t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    let oracle = counterexample::residue_b::<f64>() + s + 1.0 / (2.0 * pi * pi * 1e7);
    let oracle_gap = (id.lhs - oracle).abs();

    let pass = id.gap <= id.rhs.remainder
        && id.gap <= 1e-6
        && oracle_gap <= 1e-9
        && elapsed.as_secs_f64() < 5.0;
    report(
        1,
        "residue identity",
        pass,
        &format!(
            "gap {:.3e} <= tail bound {:.3e} <= 1e-6; oracle agreement {:.1e}; {:?}",
            id.gap, id.rhs.remainder, oracle_gap, elapsed
        ),
    );
    assert!(pass);
}

/// The partial fraction h agrees with g on sampled circles to within its own
/// remainder, which is itself below 1e-4 at half-width 1e4.
#[test]
fn criterion_2_l_certificate() {
    let t0 = Instant::now();
    let model = CounterexampleModel64::new(10_000).unwrap();
    let c2 = model.l_check_on_circle(2.0, 64).unwrap();
    let c6 = model.l_check_on_circle(6.0, 64).unwrap();
    let elapsed = t0.elapsed();
    let pass = c2.pointwise_ok
        && c6.pointwise_ok
        && c2.max_remainder <= 1e-4
        && c6.max_remainder <= 1e-4
        && elapsed.as_secs_f64() < 1.0;
    report(
        2,
        "h = g certificate",
        pass,
        &format!(
            "max gap {:.2e}/{:.2e} within remainders {:.2e}/{:.2e} on |w-1| = 2/6; {:?}",
            c2.max_gap, c6.max_gap, c2.max_remainder, c6.max_remainder, elapsed
        ),
    );
    assert!(pass);
}

/// Zero-freeness: certified windings of g and F on |w-1| = 4mπ for m = 1..3
/// account for every pole and no zero, and isolation over [-20,20]^2 finds
/// nothing.
#[test]
fn criterion_3_zero_freeness() {
    let t0 = Instant::now();
    let model = CounterexampleModel64::new(16).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for m in 1..=3 {
        let cert = model.certify_zero_free(m).unwrap();
        let ok = cert.zero_free
            && cert.winding_g.index == -(4 * m as i64 + 2)
            && cert.winding_f.index == -(4 * m as i64 + 1)
            && cert.winding_g.certified
            && cert.winding_f.certified;
        pass &= ok;
        detail.push_str(&format!(
            "m={m}: w(g)={} w(F)={}; ",
            cert.winding_g.index, cert.winding_f.index
        ));
    }
    let rect = Rect::new(-20.0, -20.0, 20.0, 20.0).unwrap();
    let zeros = isolate_zeros(&ClosedF, &rect).unwrap();
    pass &= zeros.is_empty();
    let elapsed = t0.elapsed();
    pass &= elapsed.as_secs_f64() < 30.0;
    detail.push_str(&format!("isolated {} zeros in [-20,20]^2; {:?}", zeros.len(), elapsed));
    report(3, "zero-freeness", pass, &detail);
    assert!(pass);
}

/// Contour decay: sampled sup of |g| on |w-1| = 4mπ decays like 1/R^2 (fit
/// exponent in [1.8, 2.2]); sampled sup of |h| strictly decreases in m.
#[test]
fn criterion_4_decay_probes() {
    let model = CounterexampleModel64::new(64).unwrap();
    let mut pts = Vec::new();
    let mut sup_h = Vec::new();
    for m in 1..=3 {
        let (sg, sh) = model.circle_sup(m, 256).unwrap();
        let r = 4.0 * m as f64 * std::f64::consts::PI;
        pts.push((r.ln(), sg.ln()));
        sup_h.push(sh);
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    let monotone = sup_h.windows(2).all(|w| w[1] < w[0]);
    let pass = (1.8..=2.2).contains(&exponent) && monotone;
    report(
        4,
        "contour decay",
        pass,
        &format!(
            "fitted |g| exponent {:.3} in [1.8, 2.2]; sup|h| = {:.3e} > {:.3e} > {:.3e}",
            exponent, sup_h[0], sup_h[1], sup_h[2]
        ),
    );
    assert!(pass);
}

/// Negative-axis probe of the zero-free field.
///
/// The second clause (positivity, every sampled r|F(-r)| > 0.3) holds. The
/// first clause as stated — |r F(-r) + 1/2| <= 0.05 at r = 1e3 — is
/// unattainable: it presumes the termwise limit -Σ d_k v_k = -(a+b) = -1/2,
/// but the interchange of limit and sum is invalid for this pole family, and
/// since h ≡ g the true value is r·F(-r) = -r/((r+2)(1+e^{-r-1})) → -1.
/// The check is asserted as stated and fails honestly.
#[test]
fn criterion_5_negative_axis_probe() {
    let model = CounterexampleModel64::new(10_000).unwrap();
    let cfg = model.as_halfplane_config();
    let rs: Vec<f64> = (0..=8).map(|i| 100.0 * 10f64.powf(0.25 * i as f64)).collect();
    let probe = lemma0_probe(&cfg, &rs).unwrap();

    let positive = probe.samples.iter().all(|(_, v)| *v > 0.3);
    let f = cfg.halfplane_field(complex(-1000.0, 0.0)).unwrap();
    let scaled = 1000.0 * f.value.re;
    let clause1 = (scaled + 0.5).abs() <= 0.05;
    let closed = 1000.0 * eval_wg(complex::<f64>(-1000.0, 0.0)).unwrap().value.re;

    let pass = clause1 && positive;
    report(
        5,
        "negative-axis probe",
        pass,
        &format!(
            "r*F(-r) at r=1e3 is {:.6} (closed form {:.6}, naive coefficient limit -0.5, \
             |value + 1/2| = {:.3} vs 0.05); min r|F(-r)| over [1e2,1e4] = {:.3} > 0.3 is {}",
            scaled,
            closed,
            (scaled + 0.5).abs(),
            probe.observed_liminf,
            positive
        ),
    );
    assert!(
        positive,
        "positivity clause failed: min sample {:.3}",
        probe.observed_liminf
    );
    assert!(
        clause1,
        "r*F(-r) at r=1e3 is {scaled:.6}, not within 0.05 of -1/2: the truncated sum tracks \
         the closed form w*g(w) (limit -1); the -1/2 target comes from an invalid \
         limit/sum interchange"
    );
}

/// Positive case: the geометric family passes the hypothesis check and the
/// boundary search certifies a zero in every dyadic annulus j = 2..30, each
/// matching an independent bisection oracle.
#[test]
fn criterion_6_boundary_zero_sequence() {
    let t0 = Instant::now();
    let cfg = ChargeConfiguration64::from_family(
        Family::Geometric {
            ratio: 0.5,
            count: 40,
        },
        Model::Disc,
    )
    .unwrap();
    let rep = check_hypotheses(&cfg, None).unwrap();
    let verdict_ok = rep.verdict == Verdict::HypothesesHold;

    let seq = zero_sequence_toward_boundary(&cfg, 30).unwrap();
    let elapsed = t0.elapsed();

    // independent real-axis bisection oracle on the plain sum
    let oracle_f = |x: f64| -> f64 {
        (1..=40)
            .map(|k| {
                let a = 0.5f64.powi(k);
                a / (x - (1.0 - a))
            })
            .sum()
    };
    let oracle_zero = |j: u32| -> f64 {
        let gap = 0.5f64.powi(j as i32 + 1);
        // offsets must stay representable next to 1, so floor them at 4 ulp
        let off = (gap * 1e-6).max(4.0 * f64::EPSILON);
        let mut lo = (1.0 - 0.5f64.powi(j as i32)) + off;
        let mut hi = (1.0 - 0.5f64.powi(j as i32 + 1)) - off;
        assert!(oracle_f(lo) > 0.0 && oracle_f(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if oracle_f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let mut pass = verdict_ok && elapsed.as_secs_f64() < 10.0;
    let mut worst_oracle_gap = 0.0f64;
    for report in &seq.annuli {
        if !(2..=30).contains(&report.j) {
            continue;
        }
        match &report.status {
            AnnulusStatus::Found(records) => {
                let ok = records.iter().any(|r| {
                    r.location.re < 1.0
                        && r.residual_ok()
                        && (r.location.re - oracle_zero(report.j)).abs() <= 1e-10
                        && r.location.im.abs() <= 1e-10
                });
                if let Some(r) = records.first() {
                    worst_oracle_gap = worst_oracle_gap
                        .max((r.location.re - oracle_zero(report.j)).abs());
                }
                pass &= ok;
            }
            _ => pass = false,
        }
    }
    report(
        6,
        "boundary zero sequence",
        pass,
        &format!(
            "verdict {}; zeros in all annuli 2..30 with residual <= 1e-9 * |f'|(1+|z|); \
             worst oracle gap {:.2e}; {:?}",
            rep.verdict, worst_oracle_gap, elapsed
        ),
    );
    assert!(pass);
}

/// Threshold classification table.
#[test]
fn criterion_7_threshold_table() {
    let geo = ChargeConfiguration64::from_family(
        Family::Geometric {
            ratio: 0.5,
            count: 40,
        },
        Model::Disc,
    )
    .unwrap();
    let v1 = check_hypotheses(&geo, None).unwrap().verdict;

    let pl = ChargeConfiguration64::from_family(
        Family::PowerLaw {
            exponent: 0.5,
            angle: std::f64::consts::FRAC_PI_3,
            count: 100,
        },
        Model::Disc,
    )
    .unwrap();
    let r2 = check_hypotheses(&pl, None).unwrap();

    let ce = ChargeConfiguration64::from_family(
        Family::Counterexample { half_width: 100 },
        Model::Disc,
    )
    .unwrap();
    let r3 = check_hypotheses(&ce, None).unwrap();

    let pass = v1 == Verdict::HypothesesHold
        && r2.verdict == Verdict::HypothesesFail
        && r3.verdict == Verdict::HypothesesFail
        && r3.stolz_sup == r3.threshold.finite().unwrap();
    report(
        7,
        "threshold classification",
        pass,
        &format!(
            "geometric -> {v1}; power-law (lambda 2, angle pi/3 > pi/4) -> {}; \
             boundary family (sup pi/2 = C(1), strict inequality fails) -> {}",
            r2.verdict, r3.verdict
        ),
    );
    assert!(pass);
}

/// Consistency identities: C(λ,1) = π/(2λ); Möbius round trip; unit circle
/// onto Re w = 1/2.
#[test]
fn criterion_8_consistency_identities() {
    let pi = std::f64::consts::PI;
    let mut worst_c = 0.0f64;
    for lambda in [0.5, 1.0, 2.0, 4.0] {
        let c2 = threshold_c2(lambda, 1.0).unwrap().finite().unwrap();
        worst_c = worst_c.max((c2 - pi / (2.0 * lambda)).abs());
    }

    // seeded pseudo-random points in the disc (plain LCG; no external deps)
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst_rt = 0.0f64;
    let mut made = 0;
    while made < 1000 {
        let x = 2.0 * next() - 1.0;
        let y = 2.0 * next() - 1.0;
        let z = complex(x, y);
        if z.norm() >= 0.999 {
            continue;
        }
        made += 1;
        let w = (complex::<f64>(1.0, 0.0) - z).inv();
        let back = complex::<f64>(1.0, 0.0) - w.inv();
        worst_rt = worst_rt.max((back - z).norm());
    }

    let mut worst_circle = 0.0f64;
    for i in 0..1000 {
        let theta = 0.05 + (2.0 * pi - 0.1) * (i as f64 + 0.5) / 1000.0;
        let cfg = ChargeConfiguration64::new(
            Model::Disc,
            vec![PointCharge::new(1.0, complex(theta.cos(), theta.sin()))],
        )
        .unwrap();
        let hp = cfg.to_halfplane().unwrap();
        worst_circle = worst_circle.max((hp.charges()[0].location.re - 0.5).abs());
    }

    let pass = worst_c <= 1e-15 && worst_rt <= 1e-12 && worst_circle <= 1e-12;
    report(
        8,
        "consistency identities",
        pass,
        &format!(
            "max |C(l,1) - pi/2l| = {worst_c:.2e}; max round-trip error {worst_rt:.2e} \
             over 1e3 disc points; max |Re w - 1/2| = {worst_circle:.2e} on the unit circle"
        ),
    );
    assert!(pass);
}

/// Structural properties over >= 1000 random finite configurations:
/// interlacing, Gauss–Lucas containment, winding additivity under quadtree
/// splits, and tail honesty.
#[test]
fn criterion_9_structural_properties() {
    let mut total_cases = 0usize;

    // interlacing + hull containment (real configurations)
    let mut runner = TestRunner::new(PtConfig {
        cases: 350,
        failure_persistence: None,
        ..PtConfig::default()
    });
    let strategy = (2usize..=6).prop_flat_map(|n| {
        (
            proptest::sample::subsequence((0usize..=80).collect::<Vec<_>>(), n),
            proptest::collection::vec(0.1f64..10.0, n),
        )
    });
    runner
        .run(&strategy, |(slots, ws)| {
            let charges: Vec<PointCharge<f64>> = slots
                .iter()
                .zip(&ws)
                .map(|(&s, &w)| PointCharge::new(w, complex(-0.8 + 0.02 * s as f64, 0.0)))
                .collect();
            let n = charges.len();
            let cfg = ChargeConfiguration64::new(Model::Disc, charges).unwrap();
            let poles: Vec<f64> = cfg.charges().iter().map(|c| c.location.re).collect();
            let rect =
                Rect::new(poles[0] - 0.1101, -0.1303, poles[n - 1] + 0.1101, 0.1303).unwrap();
            let records = isolate_zeros(&cfg, &rect).unwrap();
            prop_assert_eq!(records.len(), n - 1);
            for (i, rec) in records.iter().enumerate() {
                prop_assert!(rec.location.re > poles[i] && rec.location.re < poles[i + 1]);
            }
            let inside = convex_hull_containment(&records, &cfg);
            prop_assert!(inside.iter().all(|&b| b));
            Ok(())
        })
        .unwrap();
    total_cases += 350;

    // winding additivity + Gauss–Lucas on complex configurations
    let mut runner = TestRunner::new(PtConfig {
        cases: 300,
        failure_persistence: None,
        ..PtConfig::default()
    });
    let strategy = (1usize..=5).prop_flat_map(|n| {
        (
            proptest::sample::subsequence((0usize..=80 * 81).collect::<Vec<_>>(), n),
            proptest::collection::vec(0.1f64..10.0, n),
        )
    });
    runner
        .run(&strategy, |(cells, ws)| {
            let charges: Vec<PointCharge<f64>> = cells
                .iter()
                .zip(&ws)
                .map(|(&c, &w)| {
                    PointCharge::new(
                        w,
                        complex(-0.8 + 0.02 * (c % 81) as f64, -0.8 + 0.02 * (c / 81) as f64),
                    )
                })
                .collect();
            let cfg = ChargeConfiguration64::new(Model::Disc, charges).unwrap();
            let parent = Rect::new(-0.9101, -0.9103, 0.9302, 0.9304).unwrap();
            let (xm, ym) = (0.0101, 0.0103);
            let top = match count_zeros(&cfg, &ContourSpec::rectangle(parent)) {
                Ok(z) => z,
                Err(_) => return Ok(()),
            };
            let mut wind_sum = 0i64;
            for child in [
                Rect::new(parent.x0, parent.y0, xm, ym).unwrap(),
                Rect::new(xm, parent.y0, parent.x1, ym).unwrap(),
                Rect::new(parent.x0, ym, xm, parent.y1).unwrap(),
                Rect::new(xm, ym, parent.x1, parent.y1).unwrap(),
            ] {
                match count_zeros(&cfg, &ContourSpec::rectangle(child)) {
                    Ok(z) => wind_sum += z.winding.index,
                    Err(_) => return Ok(()),
                }
            }
            prop_assert_eq!(top.winding.index, wind_sum);
            if let Ok(records) = isolate_zeros(&cfg, &parent) {
                let certified: Vec<ZeroRecord<f64>> =
                    records.into_iter().filter(|r| r.certified).collect();
                let inside = convex_hull_containment(&certified, &cfg);
                prop_assert!(inside.iter().all(|&b| b));
            }
            Ok(())
        })
        .unwrap();
    total_cases += 300;

    // tail honesty over random truncation pairs and evaluation points
    let mut runner = TestRunner::new(PtConfig {
        cases: 400,
        failure_persistence: None,
        ..PtConfig::default()
    });
    let strategy = (1usize..=8, 4usize..=16, 1usize..=12, 0usize..=80, 0usize..=80);
    runner
        .run(&strategy, |(qi, n, extra, xi, yi)| {
            let q = 0.25 + 0.05 * qi as f64;
            let z: Complex64 = complex(-2.1 + 0.025 * xi as f64, -1.0 + 0.025 * yi as f64);
            prop_assume!((z - complex::<f64>(1.0, 0.0)).norm() > 0.3);
            let coarse = ChargeConfiguration64::from_family(
                Family::Geometric { ratio: q, count: n },
                Model::Disc,
            )
            .unwrap();
            let fine = ChargeConfiguration64::from_family(
                Family::Geometric {
                    ratio: q,
                    count: n + extra,
                },
                Model::Disc,
            )
            .unwrap();
            let (fc, ff) = match (coarse.field(z), fine.field(z)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Ok(()),
            };
            prop_assert!((fc.value - ff.value).norm() <= fc.remainder);
            Ok(())
        })
        .unwrap();
    total_cases += 400;

    let pass = total_cases >= 1000;
    report(
        9,
        "structural properties",
        pass,
        &format!("{total_cases} randomized configurations across 3 property groups"),
    );
    assert!(pass);
}
