//! The axiom test bench: executable forms of the homotopy, additivity,
//! splitting, and normalization axioms, chart invariance, and differential
//! uniqueness between two candidates.
//!
//! Failures are report entries, not panics, so deliberately wrong
//! candidates can be run to demonstrate that the suites have teeth. Case
//! evaluation is parallel; result order is canonical (by case id).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::harness::candidates::CandidateIndex;
use crate::harness::corpus::{constant_map_cases, random_homeo, AdmissibleCase, AdmissibleCorpus};
use crate::index::{fixed_points, isolating_arc, DegenerateInterval, IndexError};
use crate::io::map_digest;
use crate::nmap::{CirclePoint, NValuedCircleMap};
use crate::rational::{rat_int, Rational};
use crate::region::OpenArcSet;

/// Identifying inputs of one checked assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseInputs {
    /// Content digest of the map (digests of both maps where two apply).
    pub map: String,
    pub region: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One checked assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case_id: String,
    pub inputs: CaseInputs,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl CaseResult {
    /// A result whose pass criterion is literal equality of the two sides.
    pub fn compare(case_id: String, inputs: CaseInputs, expected: String, got: String) -> Self {
        let pass = expected == got;
        CaseResult {
            case_id,
            inputs,
            expected,
            got,
            pass,
        }
    }
}

/// All assertions of one suite run for one candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub candidate: String,
    pub total: usize,
    pub failures: usize,
    pub results: Vec<CaseResult>,
}

impl SuiteReport {
    fn collect(suite: &str, candidate: &str, results: Vec<CaseResult>) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            candidate: candidate.to_owned(),
            total: results.len(),
            failures: results.iter().filter(|r| !r.pass).count(),
            results,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// The first failing assertion, the witness for a rejected candidate.
    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.results.iter().find(|r| !r.pass)
    }
}

fn value_string(v: Result<i64, IndexError>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn inputs_for(case: &AdmissibleCase, detail: Option<String>) -> CaseInputs {
    CaseInputs {
        map: map_digest(&case.map),
        region: case.region.to_string(),
        detail,
    }
}

/// Axiom: admissibly homotopic pairs have equal index. Checked on every
/// corpus case that carries an admissible homotopy.
pub fn check_homotopy_axiom(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let results: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .filter_map(|case| {
            let h = case.homotopy.as_ref()?;
            let expected = value_string(candidate.index(h.source(), &case.region));
            let got = value_string(candidate.index(h.target(), &case.region));
            Some(CaseResult::compare(
                format!("{:04}", case.id),
                CaseInputs {
                    map: format!("{};{}", map_digest(h.source()), map_digest(h.target())),
                    region: case.region.to_string(),
                    detail: Some("index at both homotopy ends".to_owned()),
                },
                expected,
                got,
            ))
        })
        .collect();
    SuiteReport::collect("homotopy", candidate.name(), results)
}

/// Closed fixed intervals meet an open region iff an interval endpoint
/// lies in the region or the region has an arc inside the interval.
fn interval_meets_region(iv: &DegenerateInterval, region: &OpenArcSet) -> bool {
    if region.is_whole_circle() {
        return true;
    }
    let a = CirclePoint::new(iv.start.clone());
    let b = CirclePoint::new(iv.end.clone());
    if region.contains(&a) || region.contains(&b) {
        return true;
    }
    region.arcs().iter().any(|arc| {
        let mid = CirclePoint::new(arc.start() + arc.length() / rat_int(2));
        iv.closure_contains(&mid)
    })
}

/// Splits the fixed points of the map inside the region into two disjoint
/// unions of isolating arcs. Falls back to `(region, empty)` when the map
/// is not fix-finite.
fn disjoint_cover(case: &AdmissibleCase) -> (OpenArcSet, OpenArcSet) {
    let report = fixed_points(&case.map);
    if !report.is_fix_finite() {
        return (case.region.clone(), OpenArcSet::empty());
    }
    let all = report.point_locations();
    let inside: Vec<&CirclePoint> = all
        .iter()
        .filter(|x| case.region.is_whole_circle() || case.region.contains(x))
        .collect();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (k, x) in inside.iter().enumerate() {
        let arc = isolating_arc(x, &all, &case.region);
        if k % 2 == 0 {
            even.push(arc);
        } else {
            odd.push(arc);
        }
    }
    (
        OpenArcSet::from_arcs(even).expect("isolating arcs are disjoint"),
        OpenArcSet::from_arcs(odd).expect("isolating arcs are disjoint"),
    )
}

/// Axiom: the index is additive over disjoint unions covering the fixed
/// set, with its derived consequences: the empty-set property, excision,
/// and the solution property.
pub fn check_additivity_axiom(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let results: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .flat_map_iter(|case| {
            let mut out = Vec::with_capacity(4);
            let whole_value = candidate.index(&case.map, &case.region);
            let (u1, u2) = disjoint_cover(case);

            let part_sum = match (
                candidate.index(&case.map, &u1),
                candidate.index(&case.map, &u2),
            ) {
                (Ok(a), Ok(b)) => Ok(a + b),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            out.push(CaseResult::compare(
                format!("{:04}/sum", case.id),
                inputs_for(case, Some(format!("U1 = {u1}; U2 = {u2}"))),
                value_string(whole_value.clone()),
                value_string(part_sum),
            ));

            out.push(CaseResult::compare(
                format!("{:04}/empty", case.id),
                inputs_for(case, Some("index of the empty region".to_owned())),
                "0".to_owned(),
                value_string(candidate.index(&case.map, &OpenArcSet::empty())),
            ));

            let mut arcs = u1.arcs().to_vec();
            arcs.extend(u2.arcs().to_vec());
            let excised = OpenArcSet::from_arcs(arcs).expect("disjoint isolating arcs");
            out.push(CaseResult::compare(
                format!("{:04}/excision", case.id),
                inputs_for(case, Some(format!("V = {excised}"))),
                value_string(whole_value.clone()),
                value_string(candidate.index(&case.map, &excised)),
            ));

            let report = fixed_points(&case.map);
            let has_fixed = report
                .points
                .iter()
                .any(|p| case.region.is_whole_circle() || case.region.contains(&p.location))
                || report
                    .degenerate_intervals
                    .iter()
                    .any(|iv| interval_meets_region(iv, &case.region));
            let nonzero = matches!(whole_value, Ok(v) if v != 0);
            out.push(CaseResult {
                case_id: format!("{:04}/solution", case.id),
                inputs: inputs_for(case, None),
                expected: "nonzero index implies a fixed point in the region".to_owned(),
                got: format!(
                    "index {}, fixed points present: {}",
                    value_string(whole_value),
                    has_fixed
                ),
                pass: !nonzero || has_fixed,
            });
            out
        })
        .collect();
    SuiteReport::collect("additivity", candidate.name(), results)
}

/// Axiom: on an arc where the map splits and holds a single fixed point,
/// the index equals the classical index of the unique fixed selection.
/// The expected value comes from the slope data of the fixed point record,
/// independently of either index algorithm.
pub fn check_splitting_axiom(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let results: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .flat_map_iter(|case| {
            let report = fixed_points(&case.map);
            let mut out = Vec::new();
            if !report.is_fix_finite() {
                return out;
            }
            let all = report.point_locations();
            for rec in report.points.iter().take(3) {
                let arc = isolating_arc(&rec.location, &all, &OpenArcSet::whole_circle());
                let region = OpenArcSet::from_arcs(vec![arc]).expect("single isolating arc");
                out.push(CaseResult::compare(
                    format!("{:04}/x={}", case.id, rec.location),
                    CaseInputs {
                        map: map_digest(&case.map),
                        region: region.to_string(),
                        detail: Some(format!(
                            "slopes {} -> {}",
                            rec.slope_in, rec.slope
                        )),
                    },
                    rec.local_index.to_string(),
                    value_string(candidate.index(&case.map, &region)),
                ));
            }
            out
        })
        .collect();
    SuiteReport::collect("splitting", candidate.name(), results)
}

/// Axiom: a constant map has index 1 on any open set containing exactly
/// one of its values.
pub fn check_normalization_axiom(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let cases = constant_map_cases(&corpus.params);
    let results: Vec<CaseResult> = cases
        .par_iter()
        .enumerate()
        .map(|(id, (map, region, value))| {
            CaseResult::compare(
                format!("{id:04}"),
                CaseInputs {
                    map: map_digest(map),
                    region: region.to_string(),
                    detail: Some(format!("constant map, isolated value {value}")),
                },
                "1".to_owned(),
                value_string(candidate.index(map, region)),
            )
        })
        .collect();
    SuiteReport::collect("normalization", candidate.name(), results)
}

/// The index is invariant under conjugation by orientation-preserving PL
/// circle homeomorphisms with rational breakpoints.
pub fn check_chart_invariance(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.params.seed ^ 0x43484152);
    let homeos: Vec<_> = (0..corpus.cases.len())
        .map(|_| random_homeo(&mut rng))
        .collect();
    let results: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .zip(&homeos)
        .map(|(case, homeo)| {
            let conjugated = homeo.conjugate_map(&case.map);
            let moved_region = homeo.apply_region(&case.region);
            CaseResult::compare(
                format!("{:04}", case.id),
                CaseInputs {
                    map: format!("{};{}", map_digest(&case.map), map_digest(&conjugated)),
                    region: format!("{} -> {}", case.region, moved_region),
                    detail: None,
                },
                value_string(candidate.index(&case.map, &case.region)),
                value_string(candidate.index(&conjugated, &moved_region)),
            )
        })
        .collect();
    SuiteReport::collect("chart", candidate.name(), results)
}

/// The executable content of the uniqueness theorems: two candidates that
/// both satisfy the axioms must agree on every admissible pair.
pub fn differential_uniqueness(
    first: &dyn CandidateIndex,
    second: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> SuiteReport {
    let results: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .map(|case| {
            CaseResult::compare(
                format!("{:04}", case.id),
                inputs_for(case, None),
                value_string(first.index(&case.map, &case.region)),
                value_string(second.index(&case.map, &case.region)),
            )
        })
        .collect();
    SuiteReport::collect(
        "uniqueness",
        &format!("{}={}", first.name(), second.name()),
        results,
    )
}

/// Runs the full axiom battery for one candidate.
pub fn run_axiom_suites(
    candidate: &dyn CandidateIndex,
    corpus: &AdmissibleCorpus,
) -> Vec<SuiteReport> {
    vec![
        check_homotopy_axiom(candidate, corpus),
        check_additivity_axiom(candidate, corpus),
        check_splitting_axiom(candidate, corpus),
        check_normalization_axiom(candidate, corpus),
        check_chart_invariance(candidate, corpus),
    ]
}
