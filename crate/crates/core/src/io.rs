//! JSON interchange for map files.
//!
//! Rationals travel as strings of the form `"p/q"` or `"p"` so that no
//! float round-trip can corrupt them; parsing and serialization are exact.
//!
//! ```json
//! {
//!   "n": 2,
//!   "strands": [
//!     { "breakpoints": [["0", "0"], ["1", "1/2"]] },
//!     { "breakpoints": [["0", "1/2"], ["1", "1"]] }
//!   ],
//!   "monodromy": [1, 0]
//! }
//! ```
//!
//! An omitted monodromy means the identity permutation.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::nmap::{NValuedCircleMap, PLFunction, Permutation};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrandDocument {
    pub breakpoints: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDocument {
    pub n: usize,
    pub strands: Vec<StrandDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Error)]
pub enum MapFileError {
    #[error("json: {0}")]
    Json(String),
    #[error("strand {strand} breakpoint {breakpoint}: {message}")]
    BadRational {
        strand: usize,
        breakpoint: usize,
        message: String,
    },
    #[error("field n = {n} does not match {got} strands")]
    ArityMismatch { n: usize, got: usize },
    #[error("structure: {0}")]
    Structure(String),
}

pub fn map_to_document(map: &NValuedCircleMap) -> MapDocument {
    MapDocument {
        n: map.n(),
        strands: map
            .strands()
            .iter()
            .map(|s| StrandDocument {
                breakpoints: s
                    .breakpoints()
                    .iter()
                    .map(|(t, v)| (format_rational(t), format_rational(v)))
                    .collect(),
            })
            .collect(),
        monodromy: Some(map.monodromy().as_slice().to_vec()),
    }
}

pub fn document_to_map(doc: &MapDocument) -> Result<NValuedCircleMap, MapFileError> {
    if doc.n != doc.strands.len() {
        return Err(MapFileError::ArityMismatch {
            n: doc.n,
            got: doc.strands.len(),
        });
    }
    let mut strands = Vec::with_capacity(doc.strands.len());
    for (si, sd) in doc.strands.iter().enumerate() {
        let mut bps = Vec::with_capacity(sd.breakpoints.len());
        for (bi, (t, v)) in sd.breakpoints.iter().enumerate() {
            let parse = |s: &str| {
                parse_rational(s).map_err(|e| MapFileError::BadRational {
                    strand: si,
                    breakpoint: bi,
                    message: e.to_string(),
                })
            };
            bps.push((parse(t)?, parse(v)?));
        }
        strands.push(PLFunction::new(bps).map_err(|e| MapFileError::Structure(e.to_string()))?);
    }
    let monodromy = match &doc.monodromy {
        Some(v) => Permutation::from_vec(v.clone())
            .map_err(|e| MapFileError::Structure(e.to_string()))?,
        None => Permutation::identity(doc.n),
    };
    NValuedCircleMap::new(strands, monodromy)
        .map_err(|e| MapFileError::Structure(e.to_string()))
}

/// Parses a map file. Only structure is enforced here; semantic validation
/// is a separate, reportable step.
pub fn parse_map_json(s: &str) -> Result<NValuedCircleMap, MapFileError> {
    let doc: MapDocument =
        serde_json::from_str(s).map_err(|e| MapFileError::Json(e.to_string()))?;
    document_to_map(&doc)
}

/// Pretty JSON with exact rationals; round-trips through
/// [`parse_map_json`] to an equal map.
pub fn map_to_json_string(map: &NValuedCircleMap) -> String {
    serde_json::to_string_pretty(&map_to_document(map)).expect("document serializes")
}

/// A short content digest of the canonical (compact) serialization, used
/// to identify maps in reports.
pub fn map_digest(map: &NValuedCircleMap) -> String {
    let compact =
        serde_json::to_string(&map_to_document(map)).expect("document serializes");
    let hash = Sha256::digest(compact.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    hex[..12].to_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn round_trip_linear_maps() {
        for n in 1..=4 {
            for d in [-3i64, 0, 1, 5] {
                let f = NValuedCircleMap::linear_map(n, d);
                let back = parse_map_json(&map_to_json_string(&f)).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn parses_spec_shaped_document() {
        let text = r#"{
            "n": 2,
            "strands": [
                { "breakpoints": [["0", "0"], ["1", "1/2"]] },
                { "breakpoints": [["0", "1/2"], ["1", "1"]] }
            ],
            "monodromy": [1, 0]
        }"#;
        let map = parse_map_json(text).unwrap();
        assert_eq!(map, NValuedCircleMap::linear_map(2, 1));
    }

    #[test]
    fn omitted_monodromy_is_identity() {
        let text = r#"{
            "n": 1,
            "strands": [ { "breakpoints": [["0", "1/3"], ["1/2", "2/3"], ["1", "4/3"]] } ]
        }"#;
        let map = parse_map_json(text).unwrap();
        assert!(map.monodromy().is_identity());
        assert_eq!(map.strand(0).eval(&rat(1, 4)), rat(1, 2));
        assert_eq!(map.strand(0).eval(&rat_int(1)), rat(4, 3));
    }

    #[test]
    fn errors_carry_location() {
        let bad_rational = r#"{
            "n": 1,
            "strands": [ { "breakpoints": [["0", "x"], ["1", "1"]] } ]
        }"#;
        match parse_map_json(bad_rational) {
            Err(MapFileError::BadRational {
                strand: 0,
                breakpoint: 0,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_map_json(r#"{"n": 2, "strands": []}"#),
            Err(MapFileError::ArityMismatch { n: 2, got: 0 })
        ));
        assert!(matches!(
            parse_map_json("{"),
            Err(MapFileError::Json(_))
        ));
    }

    #[test]
    fn digest_is_stable_and_distinguishes() {
        let a = NValuedCircleMap::linear_map(2, 1);
        let b = NValuedCircleMap::linear_map(2, 3);
        assert_eq!(map_digest(&a), map_digest(&a));
        assert_ne!(map_digest(&a), map_digest(&b));
        assert_eq!(map_digest(&a).len(), 12);
    }
}
