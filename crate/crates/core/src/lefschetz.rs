//! Lefschetz numbers of n-valued circle maps.
//!
//! For an n-valued circle map of total degree D the Lefschetz number is
//! `n - D`. This is computed from strand data alone, with no reference to
//! the fixed point index, so the identity `L(f) = ind(f, X)` stays a real
//! cross-check between two independent computations. For split maps the
//! classical sum `L = sum_i (1 - deg f_i)` over the selections is computed
//! as well and must agree.

use crate::index::{index_crossing, index_schirmer};
use crate::nmap::NValuedCircleMap;
use crate::rational::to_i64;
use crate::region::OpenArcSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LefschetzMethod {
    /// `n - total_degree`, available for every map.
    DegreeFormula,
    /// `sum_i (1 - deg f_i)` over a global splitting, cross-checked against
    /// the degree formula.
    SplitSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LefschetzValue {
    pub value: i64,
    pub method: LefschetzMethod,
}

/// The Lefschetz number. For split maps both computation routes run and
/// must agree exactly.
pub fn lefschetz(map: &NValuedCircleMap) -> LefschetzValue {
    let degree_value = map.n() as i64 - map.total_degree();
    if let Some(split_value) = lefschetz_split_sum(map) {
        assert_eq!(
            split_value, degree_value,
            "split-sum and degree-formula Lefschetz numbers disagree"
        );
        return LefschetzValue {
            value: split_value,
            method: LefschetzMethod::SplitSum,
        };
    }
    LefschetzValue {
        value: degree_value,
        method: LefschetzMethod::DegreeFormula,
    }
}

/// The split-sum route, when the map splits: each selection `f_i` is a
/// single-valued circle map of degree `s_i(1) - s_i(0)` contributing
/// `1 - deg f_i`.
pub fn lefschetz_split_sum(map: &NValuedCircleMap) -> Option<i64> {
    let parts = map.split().ok()?;
    Some(
        parts
            .iter()
            .map(|p| {
                let s = p.strand(0);
                1 - to_i64(&(s.end_value() - s.start_value()))
            })
            .sum(),
    )
}

/// Both sides of the Lefschetz-Hopf identity for n-valued circle maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrabbReport {
    pub lefschetz: i64,
    pub index_schirmer: i64,
    pub index_crossing: i64,
}

impl CrabbReport {
    pub fn pass(&self) -> bool {
        self.lefschetz == self.index_schirmer && self.lefschetz == self.index_crossing
    }
}

/// Checks `L(f) = ind(f, X)` with the index computed by both algorithms.
/// The whole circle is always admissible (its boundary is empty).
pub fn verify_crabb(map: &NValuedCircleMap) -> CrabbReport {
    let whole = OpenArcSet::whole_circle();
    CrabbReport {
        lefschetz: lefschetz(map).value,
        index_schirmer: index_schirmer(map, &whole).expect("whole circle is admissible"),
        index_crossing: index_crossing(map, &whole).expect("whole circle is admissible"),
    }
}
