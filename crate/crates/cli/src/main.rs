//! `nvfix`: exact fixed point indices of PL n-valued circle maps.
//!
//! Exit codes: 0 success / all checks pass, 1 assertion failure,
//! 2 usage or parse error, 3 input outside the theory (invalid map,
//! inadmissible pair, or no lift to average over).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nvfix_core::covering::{
    averaging_grid, lift_map, verify_averaging, verify_lefschetz_averaging, CoveringError,
    CyclicCover, DEFAULT_LIFT_ENUM_BUDGET,
};
use nvfix_core::harness::{
    differential_uniqueness, generate_corpus, negative_controls, product_factor_cases,
    run_axiom_suites, CandidateIndex, CaseInputs, CaseResult, CorpusParams, CrossingCandidate,
    SchirmerCandidate, SuiteReport,
};
use nvfix_core::index::{
    fix_finite_perturb, fixed_points, index_crossing, index_schirmer, IndexError,
};
use nvfix_core::io::{map_digest, map_to_json_string, parse_map_json};
use nvfix_core::lefschetz::{lefschetz, LefschetzMethod};
use nvfix_core::nmap::NValuedCircleMap;
use nvfix_core::product::{
    product_map, verify_lefschetz_product, verify_product_formula, ProductRegion,
};
use nvfix_core::region::OpenArcSet;

#[derive(Parser)]
#[command(
    name = "nvfix",
    version,
    about = "Exact fixed point indices of piecewise-linear n-valued circle maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Schirmer,
    Crossing,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Averaging,
    Product,
    Uniqueness,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Check the distinctness and closure invariants of a map file
    Validate {
        map: PathBuf,
    },
    /// Replace degenerate fixed intervals by transverse bumps
    Fix {
        map: PathBuf,
        /// Write the perturbed map here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the local fixed point index over a region
    Index {
        map: PathBuf,
        /// "all", "empty", or arcs "start+length,..." with rational entries
        #[arg(long, default_value = "all")]
        region: String,
        #[arg(long, value_enum, default_value_t = Algorithm::Both)]
        algorithm: Algorithm,
    },
    /// Lefschetz number, with method agreement for split maps
    Lefschetz {
        map: PathBuf,
    },
    /// Enumerate the lifts of a map through the k-fold cyclic cover
    Lift {
        map: PathBuf,
        /// Fold count of the cyclic cover
        #[arg(long)]
        cover: usize,
        /// Cap on the k^n sheet enumeration
        #[arg(long, default_value_t = DEFAULT_LIFT_ENUM_BUDGET)]
        max_lift_enum: u128,
    },
    /// Check the averaging identity over deck translates of a lift
    Average {
        map: PathBuf,
        #[arg(long)]
        cover: usize,
        #[arg(long, default_value = "all")]
        region: String,
        #[arg(long, default_value_t = DEFAULT_LIFT_ENUM_BUDGET)]
        max_lift_enum: u128,
    },
    /// Check the product formula for f x g on the torus
    Product {
        map_f: PathBuf,
        map_g: PathBuf,
        #[arg(long, default_value = "all")]
        region_u: String,
        #[arg(long, default_value = "all")]
        region_v: String,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Cases per suite
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Write the full JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn assertion(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn inadmissible(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<IndexError> for Failure {
    fn from(e: IndexError) -> Self {
        Failure::inadmissible(e.to_string())
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NVFIX_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nvfix: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_map(path: &Path) -> Result<NValuedCircleMap, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    parse_map_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

/// Parses and semantically validates a map for commands that require one.
fn load_valid_map(path: &Path) -> Result<NValuedCircleMap, Failure> {
    let map = load_map(path)?;
    let report = map.validate();
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::inadmissible(format!(
            "{} is not a valid n-valued map:\n  {}",
            path.display(),
            lines.join("\n  ")
        )));
    }
    Ok(map)
}

fn parse_region(s: &str) -> Result<OpenArcSet, Failure> {
    OpenArcSet::parse(s).map_err(|e| Failure::parse(format!("region {s:?}: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { map } => cmd_validate(&map),
        Command::Fix { map, output } => cmd_fix(&map, output.as_deref()),
        Command::Index {
            map,
            region,
            algorithm,
        } => cmd_index(&map, &region, algorithm),
        Command::Lefschetz { map } => cmd_lefschetz(&map),
        Command::Lift {
            map,
            cover,
            max_lift_enum,
        } => cmd_lift(&map, cover, max_lift_enum),
        Command::Average {
            map,
            cover,
            region,
            max_lift_enum,
        } => cmd_average(&map, cover, &region, max_lift_enum),
        Command::Product {
            map_f,
            map_g,
            region_u,
            region_v,
        } => cmd_product(&map_f, &map_g, &region_u, &region_v),
        Command::Verify {
            suite,
            seed,
            cases,
            json,
        } => cmd_verify(suite, seed, cases, json.as_deref()),
    }
}

fn cmd_validate(path: &Path) -> Result<(), Failure> {
    let map = load_map(path)?;
    let report = map.validate();
    if report.is_ok() {
        println!(
            "{}: ok ({}-valued, degree {}, {}, digest {})",
            path.display(),
            map.n(),
            map.total_degree(),
            if map.is_split() { "split" } else { "unsplit" },
            map_digest(&map)
        );
        Ok(())
    } else {
        for v in &report.violations {
            println!("{}: {v}", path.display());
        }
        Err(Failure::assertion(format!(
            "{} violation(s) found",
            report.violations.len()
        )))
    }
}

fn cmd_fix(path: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let map = load_valid_map(path)?;
    let before = fixed_points(&map);
    let (fixed, homotopy) = fix_finite_perturb(&map);
    let summary = format!(
        "{} degenerate interval(s) removed; homotopy is {}",
        before.degenerate_intervals.len(),
        if homotopy.is_identity() {
            "the identity"
        } else {
            "a straight-line bump"
        }
    );
    let text = map_to_json_string(&fixed);
    match output {
        Some(out) => {
            fs::write(out, text + "\n")
                .map_err(|e| Failure::parse(format!("{}: {e}", out.display())))?;
            println!("{summary}");
            println!("wrote {}", out.display());
        }
        None => {
            eprintln!("{summary}");
            println!("{text}");
        }
    }
    Ok(())
}

fn cmd_index(path: &Path, region: &str, algorithm: Algorithm) -> Result<(), Failure> {
    let map = load_valid_map(path)?;
    let region = parse_region(region)?;
    match algorithm {
        Algorithm::Schirmer => {
            println!("index = {} (schirmer)", index_schirmer(&map, &region)?);
        }
        Algorithm::Crossing => {
            println!("index = {} (crossing)", index_crossing(&map, &region)?);
        }
        Algorithm::Both => {
            let s = index_schirmer(&map, &region)?;
            let c = index_crossing(&map, &region)?;
            if s != c {
                return Err(Failure::assertion(format!(
                    "algorithms disagree: schirmer = {s}, crossing = {c}"
                )));
            }
            println!("index = {s} (schirmer = crossing)");
        }
    }
    Ok(())
}

fn cmd_lefschetz(path: &Path) -> Result<(), Failure> {
    let map = load_valid_map(path)?;
    let value = lefschetz(&map);
    match value.method {
        LefschetzMethod::SplitSum => {
            println!("L = {} (degree formula = split sum)", value.value);
        }
        LefschetzMethod::DegreeFormula => {
            println!("L = {} (degree formula; map is unsplit)", value.value);
        }
    }
    Ok(())
}

fn cmd_lift(path: &Path, cover: usize, budget: u128) -> Result<(), Failure> {
    if cover == 0 {
        return Err(Failure::parse("--cover must be at least 1"));
    }
    let map = load_valid_map(path)?;
    let cover = CyclicCover::new(cover);
    let lifts = lift_map(&map, &cover, budget).map_err(covering_failure)?;
    println!(
        "{} lift(s) of {} through the {}-fold cover",
        lifts.len(),
        path.display(),
        cover.k()
    );
    for (i, lift) in lifts.iter().enumerate() {
        let starts: Vec<String> = lift
            .map()
            .strands()
            .iter()
            .map(|s| nvfix_core::rational::format_rational(s.start_value()))
            .collect();
        println!(
            "  lift {i}: strand starts [{}], degree {}, {}",
            starts.join(", "),
            lift.map().total_degree(),
            if lift.map().is_split() {
                "split"
            } else {
                "unsplit"
            }
        );
    }
    Ok(())
}

fn covering_failure(e: CoveringError) -> Failure {
    match e {
        CoveringError::NoLiftExists(_) => Failure::inadmissible(e.to_string()),
        CoveringError::EnumerationBudget { .. } => Failure::parse(format!(
            "{e}; raise --max-lift-enum"
        )),
        CoveringError::Index(err) => Failure::inadmissible(err.to_string()),
    }
}

fn cmd_average(path: &Path, cover: usize, region: &str, budget: u128) -> Result<(), Failure> {
    if cover == 0 {
        return Err(Failure::parse("--cover must be at least 1"));
    }
    let map = load_valid_map(path)?;
    let region = parse_region(region)?;
    let cover = CyclicCover::new(cover);
    let rep = verify_averaging(&map, &cover, &region, budget).map_err(covering_failure)?;
    let translates: Vec<String> = rep.translate_indices.iter().map(|v| v.to_string()).collect();
    println!(
        "base index = {}; deck translate indices = [{}]; sum = {} over k = {}",
        rep.base_index,
        translates.join(", "),
        rep.deck_sum(),
        rep.k
    );
    let lrep = verify_lefschetz_averaging(&map, &cover, budget).map_err(covering_failure)?;
    println!(
        "base L = {}; deck translate L = {:?}; sum = {}",
        lrep.base_lefschetz,
        lrep.translate_lefschetz,
        lrep.deck_sum()
    );
    if !rep.pass() || !lrep.pass() {
        return Err(Failure::assertion("averaging identity failed"));
    }
    println!("averaging identity holds exactly (k divides both deck sums)");
    Ok(())
}

fn cmd_product(
    path_f: &Path,
    path_g: &Path,
    region_u: &str,
    region_v: &str,
) -> Result<(), Failure> {
    let f = load_valid_map(path_f)?;
    let g = load_valid_map(path_g)?;
    let region = ProductRegion::new(parse_region(region_u)?, parse_region(region_v)?);
    let pm = product_map(&f, &g);
    let rep = verify_product_formula(&pm, &region).map_err(|e| Failure::inadmissible(e.to_string()))?;
    println!(
        "direct 2D index = {}; ind(f,U) = {}; ind(g,V) = {}; product = {}",
        rep.direct,
        rep.f_index,
        rep.g_index,
        rep.f_index * rep.g_index
    );
    let lrep = verify_lefschetz_product(&f, &g)
        .map_err(|e| Failure::inadmissible(e.to_string()))?;
    println!(
        "L(f x g) = {}; L(f) = {}; L(g) = {}",
        lrep.torus_lefschetz, lrep.f_lefschetz, lrep.g_lefschetz
    );
    if !rep.pass() || !lrep.pass() {
        return Err(Failure::assertion("product formula failed"));
    }
    println!("product formula holds exactly");
    Ok(())
}

#[derive(Serialize)]
struct ControlOutcome {
    candidate: String,
    rejected_by: Vec<String>,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyDocument {
    command: String,
    seed: u64,
    cases: usize,
    suites: Vec<SuiteReport>,
    controls: Vec<ControlOutcome>,
    pass: bool,
}

fn averaging_suite() -> SuiteReport {
    let whole = OpenArcSet::whole_circle();
    let mut results = Vec::new();
    for (n, d, k) in averaging_grid() {
        let base = NValuedCircleMap::linear_map(n, d);
        let cover = CyclicCover::new(k);
        let case_id = format!("n{n}d{d}k{k}");
        let inputs = CaseInputs {
            map: map_digest(&base),
            region: "all".to_owned(),
            detail: Some(format!("linear map ({n},{d}) through the {k}-fold cover")),
        };
        match verify_averaging(&base, &cover, &whole, DEFAULT_LIFT_ENUM_BUDGET) {
            Ok(rep) => {
                results.push(CaseResult::compare(
                    case_id.clone(),
                    inputs.clone(),
                    (rep.base_index * rep.k as i64).to_string(),
                    rep.deck_sum().to_string(),
                ));
                let lrep =
                    verify_lefschetz_averaging(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET)
                        .expect("lift already found");
                results.push(CaseResult::compare(
                    format!("{case_id}/L"),
                    inputs,
                    (lrep.base_lefschetz * lrep.k as i64).to_string(),
                    lrep.deck_sum().to_string(),
                ));
            }
            Err(CoveringError::NoLiftExists(_)) => {
                results.push(CaseResult::compare(
                    case_id,
                    inputs,
                    "no lift".to_owned(),
                    "no lift".to_owned(),
                ));
            }
            Err(e) => {
                results.push(CaseResult::compare(
                    case_id,
                    inputs,
                    "averaging identity".to_owned(),
                    format!("error: {e}"),
                ));
            }
        }
    }
    SuiteReport::new("averaging", "schirmer=crossing", results)
}

fn product_suite(params: &CorpusParams) -> SuiteReport {
    let named = [
        (NValuedCircleMap::linear_map(2, 1), NValuedCircleMap::linear_map(1, 2)),
        (NValuedCircleMap::linear_map(2, 6), NValuedCircleMap::linear_map(1, 2)),
    ];
    let whole = ProductRegion::whole_torus();
    let mut results = Vec::new();
    for (i, (f, g)) in named.iter().enumerate() {
        let rep = verify_product_formula(&product_map(f, g), &whole)
            .expect("whole torus is admissible");
        results.push(CaseResult {
            case_id: format!("named/{i}"),
            inputs: CaseInputs {
                map: format!("{};{}", map_digest(f), map_digest(g)),
                region: "all x all".to_owned(),
                detail: None,
            },
            expected: (rep.f_index * rep.g_index).to_string(),
            got: rep.direct.to_string(),
            pass: rep.pass(),
        });
    }
    for (i, (a, b)) in product_factor_cases(params).iter().enumerate() {
        let region = ProductRegion::new(a.region.clone(), b.region.clone());
        let inputs = CaseInputs {
            map: format!("{};{}", map_digest(&a.map), map_digest(&b.map)),
            region: format!("{} x {}", a.region, b.region),
            detail: None,
        };
        match verify_product_formula(&product_map(&a.map, &b.map), &region) {
            Ok(rep) => {
                results.push(CaseResult {
                    case_id: format!("{i:04}"),
                    inputs: inputs.clone(),
                    expected: (rep.f_index * rep.g_index).to_string(),
                    got: rep.direct.to_string(),
                    pass: rep.pass(),
                });
            }
            Err(e) => {
                results.push(CaseResult::compare(
                    format!("{i:04}"),
                    inputs.clone(),
                    "product formula".to_owned(),
                    format!("error: {e}"),
                ));
            }
        }
        match verify_lefschetz_product(&a.map, &b.map) {
            Ok(lrep) => {
                results.push(CaseResult {
                    case_id: format!("{i:04}/L"),
                    inputs,
                    expected: (lrep.f_lefschetz * lrep.g_lefschetz).to_string(),
                    got: lrep.torus_lefschetz.to_string(),
                    pass: lrep.pass(),
                });
            }
            Err(e) => {
                results.push(CaseResult::compare(
                    format!("{i:04}/L"),
                    inputs,
                    "lefschetz product".to_owned(),
                    format!("error: {e}"),
                ));
            }
        }
    }
    SuiteReport::new("product", "direct-2d", results)
}

fn cmd_verify(
    suite: Suite,
    seed: u64,
    cases: usize,
    json: Option<&Path>,
) -> Result<(), Failure> {
    let started = std::time::Instant::now();
    let params = CorpusParams {
        seed,
        cases,
        ..CorpusParams::default()
    };
    let mut suites: Vec<SuiteReport> = Vec::new();
    let mut controls: Vec<ControlOutcome> = Vec::new();

    let wants = |s: Suite| suite == s || suite == Suite::All;

    if wants(Suite::Axioms) || wants(Suite::Uniqueness) {
        let corpus = generate_corpus(&params);
        if wants(Suite::Axioms) {
            for candidate in [
                &SchirmerCandidate as &dyn CandidateIndex,
                &CrossingCandidate,
            ] {
                suites.extend(run_axiom_suites(candidate, &corpus));
            }
            for control in negative_controls() {
                let rejected_by: Vec<String> = run_axiom_suites(control.as_ref(), &corpus)
                    .into_iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.suite)
                    .collect();
                controls.push(ControlOutcome {
                    candidate: control.name().to_owned(),
                    pass: !rejected_by.is_empty(),
                    rejected_by,
                });
            }
        }
        if wants(Suite::Uniqueness) {
            suites.push(differential_uniqueness(
                &SchirmerCandidate,
                &CrossingCandidate,
                &corpus,
            ));
        }
    }
    if wants(Suite::Averaging) {
        suites.push(averaging_suite());
    }
    if wants(Suite::Product) {
        suites.push(product_suite(&params));
    }

    let suites_pass = suites.iter().all(|s| s.passed());
    let controls_pass = controls.iter().all(|c| c.pass);
    let pass = suites_pass && controls_pass;

    for s in &suites {
        println!(
            "suite {:<14} candidate {:<20} {:>5} checks  {} failures",
            s.suite, s.candidate, s.total, s.failures
        );
        if let Some(first) = s.first_failure() {
            println!(
                "  first failure: case {} expected {} got {}",
                first.case_id, first.expected, first.got
            );
        }
    }
    for c in &controls {
        println!(
            "control {:<14} rejected by: {}",
            c.candidate,
            if c.rejected_by.is_empty() {
                "NOTHING (suites lack teeth)".to_owned()
            } else {
                c.rejected_by.join(", ")
            }
        );
    }

    if let Some(path) = json {
        let doc = VerifyDocument {
            command: format!(
                "verify --suite {} --seed {seed} --cases {cases}",
                match suite {
                    Suite::Axioms => "axioms",
                    Suite::Averaging => "averaging",
                    Suite::Product => "product",
                    Suite::Uniqueness => "uniqueness",
                    Suite::All => "all",
                }
            ),
            seed,
            cases,
            suites,
            controls,
            pass,
        };
        let text = serde_json::to_string_pretty(&doc)
            .expect("report serializes")
            + "\n";
        fs::write(path, text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        println!("report written to {}", path.display());
    }

    println!(
        "verify: {} in {:.1}s",
        if pass { "all checks passed" } else { "FAILURES" },
        started.elapsed().as_secs_f64()
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::assertion("verification failed"))
    }
}
