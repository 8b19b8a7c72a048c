//! The axiomatic test bench: abstract index candidates, deterministic
//! corpora of admissible pairs, and suites checking every axiom plus
//! differential uniqueness.

pub mod candidates;
pub mod chart;
pub mod corpus;
pub mod suites;

pub use candidates::{
    negative_controls, CandidateIndex, CrossingCandidate, DegreeBlindCandidate,
    NegatedCandidate, SchirmerCandidate, ZeroCandidate,
};
pub use chart::{ChartError, CircleHomeo};
pub use corpus::{
    constant_map_cases, generate_corpus, random_homeo, AdmissibleCase, AdmissibleCorpus,
    CorpusParams,
};
pub use suites::{
    check_additivity_axiom, check_chart_invariance, check_homotopy_axiom,
    check_normalization_axiom, check_splitting_axiom, differential_uniqueness,
    run_axiom_suites, CaseInputs, CaseResult, SuiteReport,
};
