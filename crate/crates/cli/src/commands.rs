//! Subcommand implementations.

use crate::config::{config_digest, parse_config, ParsedConfig};
use crate::error::CliError;
use crate::output::{format_complex, format_remainder, write_file, RunManifest};
use equilib_core::*;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::result::Result;

fn load_config(path: &Path) -> Result<ParsedConfig, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

pub fn parse_point(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!("expected RE,IM, got \"{s}\"")));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad real part \"{}\"", parts[0])))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad imaginary part \"{}\"", parts[1])))?;
    Ok(complex(re, im))
}

pub fn parse_region(s: &str) -> Result<Rect<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::usage(format!(
            "expected X0,Y0,X1,Y1, got \"{s}\""
        )));
    }
    let mut v = [0.0f64; 4];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad coordinate \"{p}\"")))?;
    }
    Ok(Rect::new(v[0], v[1], v[2], v[3])?)
}

pub fn cmd_eval(config_path: &Path, at: &str) -> Result<(), CliError> {
    let parsed = load_config(config_path)?;
    let z = parse_point(at)?;
    let cfg = &parsed.config;
    println!("model = {}", cfg.model());
    println!("charges = {}", cfg.charges().len());
    match cfg.model() {
        Model::Disc => {
            let f = cfg.field(z)?;
            let u = cfg.potential(z)?;
            println!(
                "f = {} ({})",
                format_complex(f.value),
                format_remainder(f.remainder)
            );
            println!("u = {} ({})", u.value, format_remainder(u.remainder));
            let one = complex::<f64>(1.0, 0.0);
            if (one - z).norm() == 0.0 {
                println!("w = 1/(1 - z) undefined at z = 1");
                return Ok(());
            }
            let w = (one - z).inv();
            let hp = cfg.to_halfplane()?;
            let big_f = hp.halfplane_field(w)?;
            println!("w = 1/(1 - z) = {}", format_complex(w));
            println!(
                "F = {} ({})",
                format_complex(big_f.value),
                format_remainder(big_f.remainder)
            );
            println!(
                "conjugation gap |f - w*F| = {:e}",
                (f.value - w * big_f.value).norm()
            );
        }
        Model::HalfPlane => {
            let big_f = cfg.halfplane_field(z)?;
            println!(
                "F = {} ({})",
                format_complex(big_f.value),
                format_remainder(big_f.remainder)
            );
            if z.norm() == 0.0 {
                return Ok(());
            }
            let zd = complex::<f64>(1.0, 0.0) - z.inv();
            let dc = cfg.to_disc()?;
            let f = dc.field(zd)?;
            let u = dc.potential(zd)?;
            println!("z = 1 - 1/w = {}", format_complex(zd));
            println!(
                "f = {} ({})",
                format_complex(f.value),
                format_remainder(f.remainder)
            );
            println!("u = {} ({})", u.value, format_remainder(u.remainder));
            println!(
                "conjugation gap |f - w*F| = {:e}",
                (f.value - z * big_f.value).norm()
            );
        }
    }
    Ok(())
}

fn zeros_table(records: &[ZeroRecord<f64>]) -> String {
    let mut table = String::from("re,im,residual,annulus\n");
    for r in records {
        let annulus = r.annulus.map(|j| j.to_string()).unwrap_or_default();
        table.push_str(&format!(
            "{},{},{},{}\n",
            r.location.re, r.location.im, r.residual, annulus
        ));
    }
    table
}

pub fn cmd_zeros(
    config_path: &Path,
    region: Option<&str>,
    toward_boundary: Option<u32>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let parsed = load_config(config_path)?;
    let cfg = &parsed.config;
    let mut parameters = BTreeMap::new();

    let records = match (region, toward_boundary) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage(
                "use either --region or --toward-boundary, not both".to_string(),
            ))
        }
        (Some(region), None) => {
            let rect = parse_region(region)?;
            parameters.insert("region".into(), region.to_string());
            isolate_zeros(cfg, &rect)?
        }
        (None, Some(depth)) => {
            parameters.insert("toward_boundary".into(), depth.to_string());
            let seq = zero_sequence_toward_boundary(cfg, depth)?;
            for rep in &seq.annuli {
                match &rep.status {
                    AnnulusStatus::Found(records) => println!(
                        "annulus {} (|1-z| in [{:e}, {:e}]): {} zero(s)",
                        rep.j,
                        rep.inner,
                        rep.outer,
                        records.len()
                    ),
                    AnnulusStatus::NoneFound { tail_robust } => println!(
                        "annulus {}: none found{}",
                        rep.j,
                        if *tail_robust { "" } else { " (not tail-robust)" }
                    ),
                    AnnulusStatus::Uncertified { reason, .. } => {
                        println!("annulus {}: uncertified ({reason})", rep.j)
                    }
                }
            }
            seq.zeros
        }
        (None, None) => {
            return Err(CliError::usage(
                "zeros needs --region X0,Y0,X1,Y1 or --toward-boundary DEPTH".to_string(),
            ))
        }
    };

    let table = zeros_table(&records);
    print!("{table}");
    if let Some(out) = out {
        write_file(out, &table)?;
        RunManifest {
            command: "zeros".into(),
            config_digest: config_digest(&parsed),
            parameters,
            results_path: out.display().to_string(),
        }
        .write()?;
    }
    Ok(())
}

pub fn cmd_counterexample(
    m: usize,
    n: usize,
    identity_n: Option<usize>,
    samples: usize,
) -> Result<(), CliError> {
    let model = CounterexampleModel64::new(n)?;
    let (a, b) = model.residues();
    println!("a = {a}");
    println!("b = {b}");
    println!("a + b = {}", a + b);
    println!(
        "c_0 = {}, c_1 = {}",
        counterexample::residue_c::<f64>(0),
        counterexample::residue_c::<f64>(1)
    );

    let mut all_ok = true;

    let identity_model;
    let id_model_ref = match identity_n {
        Some(ni) if ni != n => {
            identity_model = CounterexampleModel64::new(ni)?;
            &identity_model
        }
        _ => &model,
    };
    let id = id_model_ref.residue_identity();
    all_ok &= id.certified;
    println!(
        "residue identity at n = {}: |a - (b + sum)| = {:e} <= tail bound {:e}: {}",
        id_model_ref.half_width(),
        id.gap,
        id.rhs.remainder,
        if id.certified { "OK" } else { "FAIL" }
    );

    for radius in [2.0, 6.0] {
        let check = model.l_check_on_circle(radius, samples)?;
        all_ok &= check.pointwise_ok;
        println!(
            "h = g on |w-1| = {radius} ({} samples): max gap {:e} within remainder {:e}: {}",
            check.samples,
            check.max_gap,
            check.max_remainder,
            if check.pointwise_ok { "OK" } else { "FAIL" }
        );
    }

    for mm in 1..=m {
        let cert = model.certify_zero_free(mm)?;
        all_ok &= cert.zero_free;
        println!(
            "winding(g) = {} on |w-1| = {:.6} (expected {}, certified {})",
            cert.winding_g.index, cert.radius, cert.expected_g, cert.winding_g.certified
        );
        println!(
            "winding(F) = {} on |w-1| = {:.6} (expected {}, certified {})",
            cert.winding_f.index, cert.radius, cert.expected_f, cert.winding_f.certified
        );
        println!(
            "zero-free certificate at m = {mm}: {}",
            if cert.zero_free { "OK" } else { "FAIL" }
        );
    }

    if !all_ok {
        return Err(CliError::numeric(
            "certificate-failed",
            "one or more certificates failed; see output".to_string(),
        ));
    }
    Ok(())
}

pub fn cmd_check(config_path: &Path, epsilon: Option<f64>) -> Result<(), CliError> {
    let parsed = load_config(config_path)?;
    let report = check_hypotheses(&parsed.config, epsilon)?;
    println!("model = {}", parsed.config.model());
    println!("charges = {}", parsed.config.charges().len());
    println!(
        "lambda = {} ({})",
        report.lambda,
        match report.lambda_source {
            LambdaSource::Declared => "declared",
            LambdaSource::Heuristic => "heuristic, non-rigorous",
        }
    );
    println!("epsilon = {}", report.epsilon);
    println!(
        "stolz angle sup = {}{}",
        report.stolz_sup,
        if report.empty_neighborhood {
            " (no stored charge in the neighborhood)"
        } else {
            ""
        }
    );
    println!("threshold C(lambda) = {}", report.threshold);
    println!("summable weights: {}", report.summable_weights);
    println!("convergence exponent condition: {}", report.condition_exponent);
    println!("stolz angle condition (strict): {}", report.condition_angle);
    println!("accumulates at boundary point 1: {}", report.accumulates_at_one);
    println!("verdict: {}", report.verdict);
    Ok(())
}

pub fn cmd_grid(
    config_path: &Path,
    out: &Path,
    nx: usize,
    ny: usize,
    region: Option<&str>,
) -> Result<(), CliError> {
    if nx < 2 || ny < 2 {
        return Err(CliError::usage("nx and ny must be at least 2".to_string()));
    }
    let parsed = load_config(config_path)?;
    let cfg = &parsed.config;

    let rect = match region {
        Some(r) => parse_region(r)?,
        None => {
            let xs: Vec<f64> = cfg.charges().iter().map(|c| c.location.re).collect();
            let ys: Vec<f64> = cfg.charges().iter().map(|c| c.location.im).collect();
            let (x0, x1) = (
                xs.iter().cloned().fold(f64::INFINITY, f64::min),
                xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            );
            let (y0, y1) = (
                ys.iter().cloned().fold(f64::INFINITY, f64::min),
                ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            );
            let pad = 0.5 + 0.25 * ((x1 - x0).max(y1 - y0));
            Rect::new(x0 - pad, y0 - pad, x1 + pad, y1 + pad)?
        }
    };

    let mut csv = String::from("re,im,u,abs_f,arg_f\n");
    for iy in 0..ny {
        let y = rect.y0 + (rect.y1 - rect.y0) * iy as f64 / (ny - 1) as f64;
        for ix in 0..nx {
            let x = rect.x0 + (rect.x1 - rect.x0) * ix as f64 / (nx - 1) as f64;
            let z = complex(x, y);
            let field = cfg.natural_field(z);
            let potential = match cfg.model() {
                Model::Disc => cfg.potential(z).map(|u| u.value),
                Model::HalfPlane => Ok(f64::NAN),
            };
            match (field, potential) {
                (Ok(f), Ok(u)) => {
                    csv.push_str(&format!(
                        "{},{},{},{},{}\n",
                        x,
                        y,
                        u,
                        f.value.norm(),
                        principal_arg(f.value)
                    ));
                }
                _ => csv.push_str(&format!("{x},{y},NaN,NaN,NaN\n")),
            }
        }
    }
    write_file(out, &csv)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("nx".into(), nx.to_string());
    parameters.insert("ny".into(), ny.to_string());
    parameters.insert(
        "region".into(),
        format!("{},{},{},{}", rect.x0, rect.y0, rect.x1, rect.y1),
    );
    RunManifest {
        command: "grid".into(),
        config_digest: config_digest(&parsed),
        parameters,
        results_path: out.display().to_string(),
    }
    .write()?;
    println!("wrote {nx} x {ny} grid to {}", out.display());
    Ok(())
}
