//! Report assembly. Complex numbers are `[re, im]`, matrices row-major
//! arrays of those.

use bergman_torelli::{CMat64, C64};
use serde_json::{json, Value};

pub fn cx(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn cvec(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|z| cx(*z)).collect())
}

pub fn cmat(m: &CMat64) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| cx(m[(i, j)])).collect()))
            .collect(),
    )
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub residuals: Value,
    pub pass: bool,
    /// Named matrices for `--format csv`.
    pub matrices: Vec<(&'static str, CMat64)>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "residuals": self.residuals,
            "pass": self.pass,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    /// `matrix,row,col,re,im` with 0-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("matrix,row,col,re,im\n");
        for (name, m) in &self.matrices {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let z = m[(i, j)];
                    out.push_str(&format!("{name},{i},{j},{:e},{:e}\n", z.re, z.im));
                }
            }
        }
        out
    }
}
