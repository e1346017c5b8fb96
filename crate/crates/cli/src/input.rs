//! Parsing of curve specs, lattices and complex-number flags.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use bergman_torelli::{HyperellipticCurve64, C64};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveSpec {
    #[serde(rename = "type")]
    kind: String,
    f_coeffs: Vec<f64>,
}

/// The raw spec text: inline JSON if it starts with `{`, otherwise a path.
fn spec_text(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return Ok(trimmed.to_string());
    }
    fs::read_to_string(Path::new(arg)).with_context(|| format!("reading curve spec {arg}"))
}

/// Coefficients `c0..cn` of `f` from a curve spec.
pub fn curve_coeffs(arg: &str) -> Result<Vec<f64>> {
    let spec: CurveSpec = serde_json::from_str(&spec_text(arg)?).context("malformed curve spec")?;
    if spec.kind != "hyperelliptic" {
        bail!("unsupported curve type {:?} (expected \"hyperelliptic\")", spec.kind);
    }
    if let Some(bad) = spec.f_coeffs.iter().find(|x| !x.is_finite()) {
        bail!("non-finite coefficient {bad}");
    }
    Ok(spec.f_coeffs)
}

pub fn curve(arg: &str) -> Result<HyperellipticCurve64> {
    HyperellipticCurve64::new(&curve_coeffs(arg)?).map_err(|e| anyhow!("curve: {e}"))
}

fn reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("not a number: {t:?}")))
        .collect()
}

/// `"a,b,c,d"` as `(omega1, omega2) = (a + bi, c + di)`.
pub fn lattice(s: &str) -> Result<(C64, C64)> {
    match reals(s)?.as_slice() {
        [a, b, c, d] => Ok((C64::new(*a, *b), C64::new(*c, *d))),
        v => bail!("lattice needs four numbers, got {}", v.len()),
    }
}

/// `"re,im"` or a bare real.
pub fn complex(s: &str) -> Result<C64> {
    match reals(s)?.as_slice() {
        [re] => Ok(C64::new(*re, 0.0)),
        [re, im] => Ok(C64::new(*re, *im)),
        _ => bail!("expected re or re,im, got {s:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_spec() {
        let c = curve_coeffs(r#"{"type":"hyperelliptic","f_coeffs":[0,-1,0,1]}"#).unwrap();
        assert_eq!(c, vec![0.0, -1.0, 0.0, 1.0]);
        assert!(curve_coeffs(r#"{"type":"plane","f_coeffs":[0,1]}"#).is_err());
        assert!(curve_coeffs(r#"{"type":"hyperelliptic"}"#).is_err());
        assert!(curve_coeffs("/no/such/file.json").is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(complex("-0.5,2").unwrap(), C64::new(-0.5, 2.0));
        assert_eq!(complex("3").unwrap(), C64::new(3.0, 0.0));
        assert!(complex("1,2,3").is_err());
        assert_eq!(
            lattice("1,0,0.3,1.1").unwrap(),
            (C64::new(1.0, 0.0), C64::new(0.3, 1.1))
        );
        assert!(lattice("1,0,0").is_err());
        assert!(lattice("1,x,0,1").is_err());
    }
}
