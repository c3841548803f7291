//! Machine-readable report envelopes shared by the CLI: a versioned JSON
//! schema, matrix serialization (complex and Eisenstein-exact), and
//! check-result aggregation.  Seeds are always recorded so every document
//! can be reproduced.

use num_complex::Complex64;
use serde::Serialize;

use crate::eisenstein::EisScalar;
use crate::matrix::Mat;

pub const SCHEMA_VERSION: &str = "hyperlab-report-v1";

/// Row-major complex matrix: each entry as [re, im].
#[derive(Debug, Clone, Serialize)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl ComplexMatrix {
    pub fn from_mat(m: &Mat<Complex64>) -> Self {
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let z = m[(i, j)];
                data.push([z.re, z.im]);
            }
        }
        ComplexMatrix {
            rows: m.rows,
            cols: m.cols,
            data,
        }
    }
}

/// Exact Eisenstein entry p + qω with the four integers as strings (they
/// can exceed i64).
#[derive(Debug, Clone, Serialize)]
pub struct EisEntry {
    pub p_numer: String,
    pub p_denom: String,
    pub q_numer: String,
    pub q_denom: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EisMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<EisEntry>,
}

impl EisMatrix {
    pub fn from_mat(m: &Mat<EisScalar>) -> Self {
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let e = &m[(i, j)];
                data.push(EisEntry {
                    p_numer: e.p.numer().to_string(),
                    p_denom: e.p.denom().to_string(),
                    q_numer: e.q.numer().to_string(),
                    q_denom: e.q.denom().to_string(),
                });
            }
        }
        EisMatrix {
            rows: m.rows,
            cols: m.cols,
            data,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

/// Top-level report document.  `payload` carries subcommand-specific data
/// (values, matrices, tables); `checks` the pass/fail lines.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub schema_version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub payload: serde_json::Value,
}

impl Document {
    pub fn new(command: &str, seed: Option<u64>, tol: Option<f64>) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            tol,
            pass: true,
            checks: Vec::new(),
            payload: serde_json::Value::Null,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ch in &self.checks {
            out.push_str(&format!(
                "{} {}: {}\n",
                if ch.pass { "ok  " } else { "FAIL" },
                ch.name,
                ch.detail
            ));
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.command,
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_matrix_roundtrip_shape() {
        let m = Mat::<Complex64>::identity(3);
        let cm = ComplexMatrix::from_mat(&m);
        assert_eq!((cm.rows, cm.cols, cm.data.len()), (3, 3, 9));
        assert_eq!(cm.data[0], [1.0, 0.0]);
        assert_eq!(cm.data[1], [0.0, 0.0]);
    }

    #[test]
    fn eis_matrix_entries_exact() {
        let em = EisMatrix::from_mat(&crate::eisenstein::h_prime());
        assert_eq!((em.rows, em.cols), (2, 2));
        // H' = [[-1, -ω], [1+ω, 0]].
        assert_eq!(em.data[0].p_numer, "-1");
        assert_eq!(em.data[1].q_numer, "-1");
        assert_eq!(em.data[2].p_numer, "1");
        assert_eq!(em.data[2].q_numer, "1");
    }

    #[test]
    fn document_aggregates_and_serializes() {
        let mut doc = Document::new("verify demo", Some(7), Some(1e-9));
        doc.push(CheckResult::new("a", true, "fine".into()));
        assert!(doc.pass);
        doc.push(CheckResult::new("b", false, "broken".into()));
        assert!(!doc.pass);
        let json = doc.to_json();
        assert!(json.contains(SCHEMA_VERSION));
        assert!(json.contains("\"seed\": 7"));
        assert!(doc.to_text().contains("FAIL b"));
    }
}
