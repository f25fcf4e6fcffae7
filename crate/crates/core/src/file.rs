//! JSON description of a metric Lie algebra.
//!
//! ```json
//! {
//!   "name": "heis3",
//!   "dim": 3,
//!   "basis": ["x", "y", "z"],
//!   "brackets": [{ "i": 0, "j": 1, "coeffs": { "2": "1" } }],
//!   "metric": [{ "i": 0, "j": 0, "value": "1" }, ...]
//! }
//! ```
//!
//! Indices are 0-based, brackets are listed for `i < j` only, metric entries
//! for `i <= j` only, and every number is a rational string `INT("/"POSINT)?`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{MetricNilAlgebra, StructureConstant};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, int, parse_rational, Rational};
use crate::RatAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub metric: Vec<MetricEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Field {
        field: field.into(),
        message: message.into(),
    }
}

impl AlgebraFile {
    /// Parses and checks the file; the result is not yet canonical.
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| FileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.check()?;
        Ok(file)
    }

    fn check(&self) -> Result<(), FileError> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(field_err(
                "basis",
                format!("{} labels for dim {}", self.basis.len(), n),
            ));
        }
        let mut seen = BTreeMap::new();
        for (e, b) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{e}]");
            if b.i >= n || b.j >= n {
                return Err(field_err(&at, format!("index out of range for dim {n}")));
            }
            if b.i >= b.j {
                return Err(field_err(&at, format!("need i < j, got i = {}, j = {}", b.i, b.j)));
            }
            if seen.insert((b.i, b.j), e).is_some() {
                return Err(field_err(&at, format!("pair ({}, {}) listed twice", b.i, b.j)));
            }
            for (k, v) in &b.coeffs {
                let at = format!("{at}.coeffs.{k}");
                if *k >= n {
                    return Err(field_err(&at, format!("index out of range for dim {n}")));
                }
                parse_rational(v).map_err(|err| field_err(&at, err.to_string()))?;
            }
        }
        let mut seen = BTreeMap::new();
        for (e, m) in self.metric.iter().enumerate() {
            let at = format!("metric[{e}]");
            if m.i >= n || m.j >= n {
                return Err(field_err(&at, format!("index out of range for dim {n}")));
            }
            if m.i > m.j {
                return Err(field_err(&at, format!("need i <= j, got i = {}, j = {}", m.i, m.j)));
            }
            if seen.insert((m.i, m.j), e).is_some() {
                return Err(field_err(&at, format!("entry ({}, {}) listed twice", m.i, m.j)));
            }
            parse_rational(&m.value).map_err(|err| field_err(format!("{at}.value"), err.to_string()))?;
        }
        Ok(())
    }

    pub fn to_algebra(&self) -> Result<RatAlgebra, FileError> {
        self.check()?;
        let n = self.dim;
        let mut brackets = Vec::new();
        for b in &self.brackets {
            for (k, v) in &b.coeffs {
                let coeff = parse_rational(v).expect("checked");
                brackets.push(StructureConstant { i: b.i, j: b.j, k: *k, coeff });
            }
        }
        let mut g = Matrix::zeros(n, n);
        for m in &self.metric {
            let v = parse_rational(&m.value).expect("checked");
            g.set(m.i, m.j, v.clone());
            g.set(m.j, m.i, v);
        }
        MetricNilAlgebra::from_brackets(self.name.clone(), self.basis.clone(), brackets, g)
            .map_err(|e| field_err("algebra", e.to_string()))
    }

    /// Canonical description of `alg`: sorted indices, lowest terms, zeros
    /// dropped.
    pub fn from_algebra(alg: &RatAlgebra) -> Self {
        let n = alg.dim();
        let zero = int(0);
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, String> = (0..n)
                    .filter(|&k| *alg.constant(i, j, k) != zero)
                    .map(|k| (k, format_rational(alg.constant(i, j, k))))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        let mut metric = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v: &Rational = alg.metric().get(i, j);
                if *v != zero {
                    metric.push(MetricEntry {
                        i,
                        j,
                        value: format_rational(v),
                    });
                }
            }
        }
        Self {
            name: alg.name().to_string(),
            dim: n,
            basis: alg.basis_names().to_vec(),
            brackets,
            metric,
            attributes: BTreeMap::new(),
        }
    }

    /// Same algebra and attributes, canonical layout.
    pub fn canonicalize(&self) -> Result<Self, FileError> {
        let mut out = Self::from_algebra(&self.to_algebra()?);
        out.attributes = self.attributes.clone();
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Declared nilpotency class, if the attributes carry one.
    pub fn declared_class(&self) -> Option<u64> {
        self.attributes.get("nilpotency_class").and_then(|v| v.as_u64())
    }
}

/// Parse, canonicalize and print.
pub fn roundtrip(text: &str) -> Result<String, FileError> {
    Ok(AlgebraFile::parse(text)?.canonicalize()?.to_json())
}
