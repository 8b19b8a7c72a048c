//! Candidate index functions for the axiom bench.
//!
//! A candidate is any integer-valued function of admissible pairs. The two
//! shipped algorithms are wrapped as candidates, together with three
//! deliberately wrong controls that the axiom suites must reject.

use crate::index::{index_crossing, index_schirmer, IndexError};
use crate::nmap::NValuedCircleMap;
use crate::region::OpenArcSet;

/// An abstract index function on admissible pairs.
///
/// Implementations must be pure functions of their arguments; the harness
/// may invoke them concurrently.
pub trait CandidateIndex: Sync {
    fn name(&self) -> &str;
    fn index(&self, map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError>;
}

/// The constructive perturb-isolate-split algorithm.
pub struct SchirmerCandidate;

impl CandidateIndex for SchirmerCandidate {
    fn name(&self) -> &str {
        "schirmer"
    }

    fn index(&self, map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
        index_schirmer(map, region)
    }
}

/// The diagonal-crossing count.
pub struct CrossingCandidate;

impl CandidateIndex for CrossingCandidate {
    fn name(&self) -> &str {
        "crossing"
    }

    fn index(&self, map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
        index_crossing(map, region)
    }
}

/// Control: identically zero. Satisfies homotopy and additivity but fails
/// splitting and normalization.
pub struct ZeroCandidate;

impl CandidateIndex for ZeroCandidate {
    fn name(&self) -> &str {
        "zero"
    }

    fn index(&self, _: &NValuedCircleMap, _: &OpenArcSet) -> Result<i64, IndexError> {
        Ok(0)
    }
}

/// Control: the total degree, blind to the region. Homotopy invariant but
/// fails the empty-set consequence of additivity (and normalization).
pub struct DegreeBlindCandidate;

impl CandidateIndex for DegreeBlindCandidate {
    fn name(&self) -> &str {
        "degree-blind"
    }

    fn index(&self, map: &NValuedCircleMap, _: &OpenArcSet) -> Result<i64, IndexError> {
        Ok(map.total_degree())
    }
}

/// Control: the negated index. Passes homotopy and additivity but fails
/// splitting and normalization.
pub struct NegatedCandidate;

impl CandidateIndex for NegatedCandidate {
    fn name(&self) -> &str {
        "negated"
    }

    fn index(&self, map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
        index_schirmer(map, region).map(|v| -v)
    }
}

/// The three negative controls, for suites that must demonstrate teeth.
pub fn negative_controls() -> Vec<Box<dyn CandidateIndex>> {
    vec![
        Box::new(ZeroCandidate),
        Box::new(DegreeBlindCandidate),
        Box::new(NegatedCandidate),
    ]
}
