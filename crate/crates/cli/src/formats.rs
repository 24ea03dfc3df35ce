//! The on-disk arrangement format and the JSON shapes of command output.
//!
//! An arrangement file is a single JSON object:
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "hyperplanes": [
//!     [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
//!     [["0", "0", "1", "0"], ["1/2", "0", "0", "-1"]]
//!   ]
//! }
//! ```
//!
//! Each hyperplane is a row of `ambient_dim` quaternions, each given by
//! four rational strings `[w, x, y, z]` for `w + xi + yj + zk`.  Unknown
//! fields are ignored, which lets the JSON emitted by `quarr info` feed
//! straight back in as an input file.  Coefficient rows are canonicalized
//! on load, so two files describing the same hyperplanes by different
//! right scalings name the same arrangement — and duplicate rows are
//! rejected with both indices.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use quarr_core::arrangement::Arrangement;
use quarr_core::quaternion::Rational;
use quarr_core::Quaternion;

use crate::CliError;

pub type QuaternionStrings = [String; 4];

#[derive(Serialize, Deserialize)]
pub struct ArrangementFile {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Vec<QuaternionStrings>>,
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, CliError> {
    let file: ArrangementFile = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("malformed arrangement file: {e}")))?;
    let mut rows = Vec::with_capacity(file.hyperplanes.len());
    for (h, row) in file.hyperplanes.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(row.len());
        for (c, q) in row.iter().enumerate() {
            coeffs.push(parse_quaternion(q).map_err(|msg| {
                CliError::Usage(format!("hyperplane {h}, coefficient {c}: {msg}"))
            })?);
        }
        rows.push(coeffs);
    }
    Ok(Arrangement::new(file.ambient_dim, rows)?)
}

fn parse_quaternion(q: &QuaternionStrings) -> Result<Quaternion, String> {
    let mut parts = [
        Rational::integer(0),
        Rational::integer(0),
        Rational::integer(0),
        Rational::integer(0),
    ];
    for (k, s) in q.iter().enumerate() {
        parts[k] = Rational::from_str(s).map_err(|e| format!("component {k} ({s:?}): {e}"))?;
    }
    let [w, x, y, z] = parts;
    Ok(Quaternion::new(w, x, y, z))
}

pub fn quaternion_strings(q: &Quaternion) -> QuaternionStrings {
    let [w, x, y, z] = q.components();
    [w.to_string(), x.to_string(), y.to_string(), z.to_string()]
}

pub fn arrangement_rows(arr: &Arrangement) -> Vec<Vec<QuaternionStrings>> {
    arr.hyperplanes()
        .iter()
        .map(|h| h.coeffs().iter().map(quaternion_strings).collect())
        .collect()
}

// ---- JSON mirrors of command output ------------------------------------
//
// The core crate stays serde-free; these shapes define the CLI's stable
// JSON surface instead.

/// `quarr info`.  A superset of [`ArrangementFile`] on purpose.
#[derive(Serialize)]
pub struct InfoJson {
    pub ambient_dim: usize,
    pub hyperplane_count: usize,
    pub rank: usize,
    pub circuits: Vec<Vec<usize>>,
    pub hyperplanes: Vec<Vec<QuaternionStrings>>,
}

#[derive(Serialize)]
pub struct FlatJson {
    pub elements: Vec<usize>,
    pub rank: usize,
    pub mobius: i64,
    pub lower_covers: Vec<usize>,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub flats: Vec<FlatJson>,
    pub top_rank: usize,
}

#[derive(Serialize)]
pub struct PoincareJson {
    /// Dense coefficients of `P(t)`, degree 0 upward.
    pub coefficients: Vec<u64>,
    pub betti: Vec<u64>,
    pub total_rank: u64,
    pub euler_characteristic: i64,
    pub display: String,
}

#[derive(Serialize)]
pub struct OsJson {
    /// From the circuit-ideal span engine.
    pub graded_dims: Vec<u64>,
    /// From the nbc enumeration — must agree with `graded_dims`.
    pub nbc_dims: Vec<u64>,
    /// The nbc monomials themselves, by degree `3k`.
    pub nbc_basis: Vec<Vec<Vec<usize>>>,
    pub circuits: Vec<Vec<usize>>,
    pub ideal_generator_count: usize,
}

#[derive(Serialize)]
pub struct RecurrenceEntryJson {
    pub index: usize,
    pub parent: Vec<u64>,
    pub deletion: Vec<u64>,
    pub restriction: Vec<u64>,
    pub rhs: Vec<u64>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct RecurrenceJson {
    pub entries: Vec<RecurrenceEntryJson>,
    pub all_pass: bool,
}

#[derive(Serialize)]
pub struct ProbeJson {
    pub exponent: u8,
    pub residuals: Vec<f64>,
    pub margin: f64,
}

#[derive(Serialize)]
pub struct IntegralJson {
    pub value: f64,
    pub error: f64,
    pub samples: usize,
    pub scheme: String,
}

#[derive(Serialize)]
pub struct PullbackJson {
    pub index: usize,
    pub points: usize,
    pub max_d_residual: f64,
    pub bidegree_ok: bool,
    pub scale_residual: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ValidationJson {
    pub seed: u64,
    pub samples: usize,
    pub probe: ProbeJson,
    pub closedness_max: f64,
    pub closedness_points: usize,
    pub closedness_pass: bool,
    pub scale_residual: f64,
    pub scale_pass: bool,
    pub normalization_constant: f64,
    pub integral: IntegralJson,
    pub cross_check: IntegralJson,
    pub schemes_agree: bool,
    pub round_trip: f64,
    pub round_trip_pass: bool,
    pub pullbacks: Vec<PullbackJson>,
    pub pair_wedge_pass: Option<bool>,
    pub excess_wedge_empty: Option<bool>,
    pub all_pass: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes() {
        // Second row is the first right-scaled by j; they collide after
        // canonicalization and the error names both indices.
        let text = r#"{
            "ambient_dim": 2,
            "hyperplanes": [
                [["1","0","0","0"], ["0","1","0","0"]],
                [["0","0","1","0"], ["0","0","0","1"]]
            ]
        }"#;
        let err = parse_arrangement(text).unwrap_err();
        assert_eq!(err.code(), 2);
        let msg = err.to_string();
        assert!(msg.contains('0') && msg.contains('1'), "{msg}");
    }

    #[test]
    fn good_file_round_trips() {
        let text = r#"{
            "ambient_dim": 2,
            "hyperplanes": [
                [["1","0","0","0"], ["0","1","0","0"]],
                [["0","0","1","0"], ["1/2","0","0","-1"]]
            ],
            "comment": "unknown fields are ignored"
        }"#;
        let arr = parse_arrangement(text).unwrap();
        assert_eq!(arr.hyperplane_count(), 2);
        let rows = arrangement_rows(&arr);
        // Canonical form leads with 1, so the j in row 1 moved the scale.
        assert_eq!(rows[1][0], ["1", "0", "0", "0"].map(String::from));
    }

    #[test]
    fn bad_numbers_are_located() {
        let text = r#"{
            "ambient_dim": 1,
            "hyperplanes": [ [["1","0","0","0"]], [["3/0","0","0","0"]] ]
        }"#;
        let msg = parse_arrangement(text).unwrap_err().to_string();
        assert!(msg.contains("hyperplane 1"), "{msg}");
        assert!(msg.contains("coefficient 0"), "{msg}");
    }

    #[test]
    fn zero_rows_and_length_mismatches_are_rejected() {
        let zero = r#"{
            "ambient_dim": 1,
            "hyperplanes": [ [["0","0","0","0"]] ]
        }"#;
        assert_eq!(parse_arrangement(zero).unwrap_err().code(), 2);

        let short = r#"{
            "ambient_dim": 2,
            "hyperplanes": [ [["1","0","0","0"]] ]
        }"#;
        let msg = parse_arrangement(short).unwrap_err().to_string();
        assert!(msg.contains("expected 2"), "{msg}");
    }
}
