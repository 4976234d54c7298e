//! Configuration schema: parsing, validation, canonical serialization, and
//! the stable digest.
//!
//! Input is a JSON object with `model` ("disc" or "half-plane") and either an
//! explicit `charges` array or a `family` generator. Complex numbers are
//! always two-element arrays `[re, im]`. A top-level `truncation` supplies
//! the family term count when the family omits it.

use crate::error::CliError;
use equilib_core::{complex, ChargeConfiguration64, Family, Model, PointCharge};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub model: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub charges: Vec<RawCharge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<RawFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCharge {
    pub a: f64,
    pub z: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RawFamily {
    Geometric {
        ratio: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    PowerLaw {
        exponent: f64,
        #[serde(default)]
        angle: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    Counterexample {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        half_width: Option<usize>,
    },
}

/// A validated configuration together with its canonical raw form.
#[derive(Debug, Clone)]
pub struct ParsedConfig {
    pub raw: RawConfig,
    pub config: ChargeConfiguration64,
}

fn parse_model(s: &str) -> Result<Model, CliError> {
    match s {
        "disc" => Ok(Model::Disc),
        "half-plane" => Ok(Model::HalfPlane),
        other => Err(CliError::schema(format!(
            "model must be \"disc\" or \"half-plane\", got \"{other}\""
        ))),
    }
}

/// Parse and validate a configuration, normalizing the raw form (the family
/// count is resolved from `truncation` and the top-level field dropped).
pub fn parse_config(text: &str) -> Result<ParsedConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        CliError::schema(format!(
            "line {}, column {}: {}",
            e.line(),
            e.column(),
            e
        ))
    })?;
    let model = parse_model(&raw.model)?;

    if raw.family.is_some() && !raw.charges.is_empty() {
        return Err(CliError::constraint(
            "provide either explicit charges or a family, not both".to_string(),
        ));
    }

    let (config, family_norm) = if let Some(fam) = &raw.family {
        let fam_norm = normalize_family(fam, raw.truncation)?;
        let family = to_core_family(&fam_norm)?;
        let config = ChargeConfiguration64::from_family(family, model)?;
        (config, Some(fam_norm))
    } else {
        if raw.charges.is_empty() {
            return Err(CliError::constraint(
                "configuration needs charges or a family".to_string(),
            ));
        }
        let charges = raw
            .charges
            .iter()
            .map(|c| PointCharge::new(c.a, complex(c.z[0], c.z[1])))
            .collect();
        (ChargeConfiguration64::new(model, charges)?, None)
    };

    let raw = RawConfig {
        model: raw.model,
        charges: raw.charges,
        family: family_norm,
        truncation: None,
    };
    Ok(ParsedConfig { raw, config })
}

fn normalize_family(
    fam: &RawFamily,
    truncation: Option<usize>,
) -> Result<RawFamily, CliError> {
    let need_count = |count: Option<usize>, what: &str| -> Result<usize, CliError> {
        count.or(truncation).ok_or_else(|| {
            CliError::constraint(format!(
                "{what} family needs a count (or top-level truncation)"
            ))
        })
    };
    Ok(match *fam {
        RawFamily::Geometric { ratio, count } => RawFamily::Geometric {
            ratio,
            count: Some(need_count(count, "geometric")?),
        },
        RawFamily::PowerLaw {
            exponent,
            angle,
            count,
        } => RawFamily::PowerLaw {
            exponent,
            angle,
            count: Some(need_count(count, "power-law")?),
        },
        RawFamily::Counterexample { half_width } => RawFamily::Counterexample {
            half_width: Some(need_count(half_width, "counterexample")?),
        },
    })
}

fn to_core_family(fam: &RawFamily) -> Result<Family<f64>, CliError> {
    let family = match *fam {
        RawFamily::Geometric { ratio, count } => Family::Geometric {
            ratio,
            count: count.expect("normalized"),
        },
        RawFamily::PowerLaw {
            exponent,
            angle,
            count,
        } => Family::PowerLaw {
            exponent,
            angle,
            count: count.expect("normalized"),
        },
        RawFamily::Counterexample { half_width } => Family::Counterexample {
            half_width: half_width.expect("normalized"),
        },
    };
    family.validate()?;
    Ok(family)
}

/// Canonical serialization of the normalized configuration; identical inputs
/// produce identical text.
pub fn serialize_config(parsed: &ParsedConfig) -> String {
    serde_json::to_string(&parsed.raw).expect("config serializes")
}

/// Stable hex digest of the canonical serialization.
pub fn config_digest(parsed: &ParsedConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serialize_config(parsed).as_bytes());
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_explicit_charges() {
        let p = parse_config(r#"{"model":"disc","charges":[{"a":1.0,"z":[0.5,0.0]}]}"#).unwrap();
        assert_eq!(p.config.charges().len(), 1);
        assert_eq!(p.config.charges()[0].weight, 1.0);
    }

    #[test]
    fn parses_family_with_count() {
        let p = parse_config(
            r#"{"model":"disc","family":{"kind":"geometric","ratio":0.5,"count":40}}"#,
        )
        .unwrap();
        assert_eq!(p.config.charges().len(), 40);
        assert_eq!(p.config.family().unwrap().declared_lambda(), 0.0);
    }

    #[test]
    fn truncation_supplies_count() {
        let p = parse_config(
            r#"{"model":"disc","family":{"kind":"geometric","ratio":0.5},"truncation":7}"#,
        )
        .unwrap();
        assert_eq!(p.config.charges().len(), 7);
    }

    #[test]
    fn rejects_negative_weight() {
        let e = parse_config(r#"{"model":"disc","charges":[{"a":-1,"z":[0,0]}]}"#).unwrap_err();
        assert_eq!(e.exit, 2);
        assert!(e.message.contains("weight > 0 violated at index 0"));
    }

    #[test]
    fn rejects_malformed_json_with_location() {
        let e = parse_config(r#"{"model":"disc","charges":[{"a":1.0,"#).unwrap_err();
        assert_eq!(e.kind, "schema");
        assert!(e.message.contains("line 1"));
    }

    #[test]
    fn rejects_unknown_fields() {
        let e = parse_config(r#"{"model":"disc","chargez":[]}"#).unwrap_err();
        assert_eq!(e.kind, "schema");
    }

    #[test]
    fn round_trip_is_exact() {
        for text in [
            r#"{"model":"disc","charges":[{"a":1.25,"z":[0.5,-0.125]},{"a":0.5,"z":[-0.25,0.0]}]}"#,
            r#"{"model":"disc","family":{"kind":"power-law","exponent":0.5,"angle":1.0471975511965976,"count":9}}"#,
            r#"{"model":"half-plane","family":{"kind":"counterexample","half_width":5}}"#,
        ] {
            let a = parse_config(text).unwrap();
            let ser = serialize_config(&a);
            let b = parse_config(&ser).unwrap();
            assert_eq!(a.raw, b.raw);
            assert_eq!(a.config, b.config);
            assert_eq!(config_digest(&a), config_digest(&b));
            // canonical form is a fixed point
            assert_eq!(ser, serialize_config(&b));
        }
    }

    #[test]
    fn digest_is_stable_across_calls() {
        let text = r#"{"model":"disc","family":{"kind":"geometric","ratio":0.5,"count":3}}"#;
        let a = parse_config(text).unwrap();
        let b = parse_config(text).unwrap();
        assert_eq!(config_digest(&a), config_digest(&b));
    }
}
