//! Machine-readable command reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::file::AlgebraFile;
use crate::geodesic::{GeodesicSolution, SpaceVerdict, Witness};
use crate::scalar::{format_rational, Rational};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    /// SHA-256 of the canonical form of the input algebra.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, input: &AlgebraFile, seed: Option<u64>, result: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            input_digest: digest(input),
            seed,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn digest(file: &AlgebraFile) -> String {
    let canonical = file.canonicalize().unwrap_or_else(|_| file.clone());
    hex::encode(Sha256::digest(canonical.to_json().as_bytes()))
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn solution_json(sol: &GeodesicSolution<Rational>) -> serde_json::Value {
    use serde_json::json;
    match sol {
        GeodesicSolution::NotGeodesic => json!({ "status": "NotGeodesic" }),
        GeodesicSolution::Unique { xi, k } => json!({
            "status": "Unique",
            "xi": rationals(xi),
            "k": format_rational(k),
        }),
        GeodesicSolution::Family { xi, k, directions } => json!({
            "status": "Family",
            "xi": rationals(xi),
            "k": format_rational(k),
            "k_forced": sol.k_forced(),
            "directions": directions
                .iter()
                .map(|d| json!({ "xi": rationals(&d.xi), "k": format_rational(&d.k) }))
                .collect::<Vec<_>>(),
        }),
    }
}

fn witness_json(w: &Witness) -> serde_json::Value {
    serde_json::json!({
        "vector": rationals(&w.y),
        "probe": w.kind.label(),
        "null": w.null,
        "solution": solution_json(&w.solution),
    })
}

pub fn verdict_json(v: &SpaceVerdict) -> serde_json::Value {
    use serde_json::json;
    let tally = |t: &crate::geodesic::Tally| json!({ "total": t.total, "solvable": t.solvable });
    json!({
        "verdicts": v.verdicts.iter().map(|x| x.label()).collect::<Vec<_>>(),
        "stats": {
            "generic": tally(&v.stats.generic),
            "generic_exceptional": v.stats.generic_exceptional,
            "null": tally(&v.stats.null),
            "lattice_nonnull": tally(&v.stats.lattice_nonnull),
            "lattice_null": tally(&v.stats.lattice_null),
            "null_cone_empty": v.stats.null_cone == crate::geodesic::NullCone::Empty,
        },
        "witnesses": v.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
    })
}
