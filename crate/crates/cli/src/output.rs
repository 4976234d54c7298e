//! Deterministic text formatting and result files.

use crate::error::CliError;
use equilib_core::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// `a + bi` with a literal `0i` for real values (covers negative zero too).
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{} + 0i", z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

/// Remainder annotation: `±0` for exact values.
pub fn format_remainder(r: f64) -> String {
    if r == 0.0 {
        "±0".to_string()
    } else if r.is_infinite() {
        "±inf".to_string()
    } else {
        format!("±{r:.3e}")
    }
}

/// Run provenance written next to result files; identical inputs produce
/// identical manifests.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_digest: String,
    pub parameters: BTreeMap<String, String>,
    pub results_path: String,
}

impl RunManifest {
    pub fn write(&self) -> Result<(), CliError> {
        let path = format!("{}.manifest.json", self.results_path);
        let text = serde_json::to_string(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use equilib_core::complex;

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(complex(0.5, 0.0)), "0.5 + 0i");
        assert_eq!(format_complex(complex(0.5, -0.0)), "0.5 + 0i");
        assert_eq!(format_complex(complex(-1.5, 2.0)), "-1.5 + 2i");
        assert_eq!(format_complex(complex(0.0, -3.25)), "0 - 3.25i");
    }

    #[test]
    fn remainder_formatting() {
        assert_eq!(format_remainder(0.0), "±0");
        assert_eq!(format_remainder(5.066e-8), "±5.066e-8");
        assert_eq!(format_remainder(f64::INFINITY), "±inf");
    }
}
