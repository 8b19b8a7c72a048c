//! Deterministic generation of admissible pairs, homotopies, constant-map
//! cases, and random charts.
//!
//! Strand systems are generated in configuration coordinates: at every
//! breakpoint the n strand values are kept sorted within a window of width
//! less than one, which makes distinctness automatic under linear
//! interpolation. Closure is arranged by rotating the start configuration
//! by a shift `r` and adding an integer winding `w`, giving monodromy
//! `i -> i + r (mod n)` and total degree `n w + r`; on the circle every
//! achievable monodromy class is such a rotation, since strands cannot
//! cross.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::harness::chart::CircleHomeo;
use crate::homotopy::{homotopy_is_admissible, make_homotopy, StrandHomotopy};
use crate::index::{fixed_points, is_admissible, is_fixed, isolating_arc};
use crate::nmap::{CirclePoint, NValuedCircleMap, PLFunction, Permutation};
use crate::rational::{rat_int, Rational};
use crate::region::OpenArcSet;

/// Generator knobs. The defaults match the shipped verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub seed: u64,
    pub cases: usize,
    pub max_strands: usize,
    pub max_breakpoints: usize,
    pub max_denominator: i64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 7,
            cases: 100,
            max_strands: 4,
            max_breakpoints: 8,
            max_denominator: 64,
        }
    }
}

/// One generated case: an admissible pair, optionally with an admissible
/// straight-line homotopy out of the map.
#[derive(Debug, Clone)]
pub struct AdmissibleCase {
    pub id: usize,
    pub map: NValuedCircleMap,
    pub region: OpenArcSet,
    pub homotopy: Option<StrandHomotopy>,
}

/// A reproducible corpus: the same seed yields identical cases.
#[derive(Debug, Clone)]
pub struct AdmissibleCorpus {
    pub params: CorpusParams,
    pub cases: Vec<AdmissibleCase>,
}

/// The grid and closure data of a map, kept so homotopy targets can be
/// regenerated with identical seam behavior.
struct MapSketch {
    n: usize,
    interior_grid: Vec<Rational>,
    shift: usize,
    winding: i64,
}

fn random_distinct(rng: &mut ChaCha8Rng, count: usize, denominator: i64) -> Vec<Rational> {
    assert!(count as i64 <= denominator);
    let mut picked = BTreeSet::new();
    while picked.len() < count {
        picked.insert(rng.gen_range(0..denominator));
    }
    picked
        .into_iter()
        .map(|p| Rational::new(p.into(), denominator.into()))
        .collect()
}

fn random_sketch(rng: &mut ChaCha8Rng, params: &CorpusParams) -> MapSketch {
    let n = rng.gen_range(1..=params.max_strands);
    let interior_count = rng.gen_range(0..=params.max_breakpoints.saturating_sub(2));
    let interior_grid = random_distinct(rng, interior_count, params.max_denominator)
        .into_iter()
        .filter(|t| t > &rat_int(0))
        .collect();
    MapSketch {
        n,
        interior_grid,
        shift: rng.gen_range(0..n),
        winding: rng.gen_range(-2..=2),
    }
}

/// Materializes strand data over the sketch's grid: fresh sorted-window
/// configurations at every breakpoint, with the final configuration forced
/// by the shift and winding.
fn materialize(rng: &mut ChaCha8Rng, sketch: &MapSketch, params: &CorpusParams) -> NValuedCircleMap {
    let n = sketch.n;
    let start = random_distinct(rng, n, params.max_denominator);
    let mut rows: Vec<(Rational, Vec<Rational>)> = Vec::new();
    rows.push((rat_int(0), start.clone()));
    for t in &sketch.interior_grid {
        let config = random_distinct(rng, n, params.max_denominator);
        let offset = rat_int(rng.gen_range(-1..=1));
        rows.push((t.clone(), config.into_iter().map(|v| v + &offset).collect()));
    }
    let w = rat_int(sketch.winding);
    let finals: Vec<Rational> = (0..n)
        .map(|i| {
            let idx = (i + sketch.shift) % n;
            let wrap = if i + sketch.shift >= n { 1 } else { 0 };
            &start[idx] + rat_int(wrap) + &w
        })
        .collect();
    rows.push((rat_int(1), finals));

    let strands = (0..n)
        .map(|i| {
            let bps = rows.iter().map(|(t, vs)| (t.clone(), vs[i].clone())).collect();
            PLFunction::new(bps).expect("grid rows are sorted")
        })
        .collect();
    let sigma = (0..n).map(|i| (i + sketch.shift) % n).collect();
    let map = NValuedCircleMap::new(
        strands,
        Permutation::from_vec(sigma).expect("cyclic shift is a permutation"),
    )
    .expect("sketch produces structural maps");
    debug_assert!(map.is_valid(), "generator produced an invalid map");
    map
}

/// A region whose boundary avoids the map's fixed points, mixing the whole
/// circle with unions of one to three arcs, roughly half of which cross
/// the seam.
fn random_region(rng: &mut ChaCha8Rng, map: &NValuedCircleMap, params: &CorpusParams) -> OpenArcSet {
    if rng.gen_range(0..100) < 15 {
        return OpenArcSet::whole_circle();
    }
    let arcs = rng.gen_range(1..=3usize);
    let denominator = params.max_denominator * 2;
    let mut boundary = BTreeSet::new();
    let mut attempts = 0;
    while boundary.len() < 2 * arcs && attempts < 64 * arcs {
        attempts += 1;
        let p = Rational::new(rng.gen_range(0..denominator).into(), denominator.into());
        if !is_fixed(map, &CirclePoint::new(p.clone())) {
            boundary.insert(p);
        }
    }
    if boundary.len() < 2 * arcs {
        return OpenArcSet::whole_circle();
    }
    let points: Vec<Rational> = boundary.into_iter().collect();
    let wrap = rng.gen_bool(0.5);
    let mut list = Vec::with_capacity(arcs);
    if wrap {
        // pair off one step out of phase; the last arc crosses the seam
        for a in 0..arcs - 1 {
            let s = &points[2 * a + 1];
            let e = &points[2 * a + 2];
            list.push(crate::region::Arc::new(s.clone(), e - s).expect("sorted points"));
        }
        let s = &points[2 * arcs - 1];
        let e = &points[0] + rat_int(1);
        list.push(crate::region::Arc::new(s.clone(), e - s).expect("wrap arc"));
    } else {
        for a in 0..arcs {
            let s = &points[2 * a];
            let e = &points[2 * a + 1];
            list.push(crate::region::Arc::new(s.clone(), e - s).expect("sorted points"));
        }
    }
    OpenArcSet::from_arcs(list).expect("paired points give disjoint arcs")
}

/// A homotopy target over the same sketch, retried until the straight-line
/// homotopy is admissible for the case's region.
fn random_homotopy(
    rng: &mut ChaCha8Rng,
    sketch: &MapSketch,
    params: &CorpusParams,
    source: &NValuedCircleMap,
    region: &OpenArcSet,
) -> Option<StrandHomotopy> {
    for _ in 0..8 {
        let target = materialize(rng, sketch, params);
        let h = make_homotopy(source.clone(), target)
            .expect("same sketch guarantees a certified homotopy");
        if homotopy_is_admissible(&h, region) {
            return Some(h);
        }
    }
    None
}

/// Generates the corpus for `params`, deterministically from the seed.
pub fn generate_corpus(params: &CorpusParams) -> AdmissibleCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::with_capacity(params.cases);
    for id in 0..params.cases {
        let sketch = random_sketch(&mut rng, params);
        let map = materialize(&mut rng, &sketch, params);
        let region = random_region(&mut rng, &map, params);
        debug_assert!(is_admissible(&map, &region));
        let homotopy = if rng.gen_bool(0.7) {
            random_homotopy(&mut rng, &sketch, params, &map, &region)
        } else {
            None
        };
        cases.push(AdmissibleCase {
            id,
            map,
            region,
            homotopy,
        });
    }
    AdmissibleCorpus {
        params: *params,
        cases,
    }
}

/// Constant-map normalization cases: a constant map together with an arc
/// containing exactly one of its values.
pub fn constant_map_cases(
    params: &CorpusParams,
) -> Vec<(NValuedCircleMap, OpenArcSet, CirclePoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x4e4f524d);
    let mut out = Vec::with_capacity(params.cases);
    for _ in 0..params.cases {
        let n = rng.gen_range(1..=params.max_strands);
        let values: Vec<CirclePoint> = random_distinct(&mut rng, n, params.max_denominator)
            .into_iter()
            .map(CirclePoint::new)
            .collect();
        let map = NValuedCircleMap::constant_map(&values).expect("distinct values");
        let pick = rng.gen_range(0..n);
        // the values are exactly the fixed points, already sorted
        let arc = isolating_arc(&values[pick], &values, &OpenArcSet::whole_circle());
        let region = OpenArcSet::from_arcs(vec![arc]).expect("single arc");
        out.push((map, region, values[pick].clone()));
    }
    out
}

/// Random orientation-preserving PL circle homeomorphisms: rotations and
/// one- or two-interior-breakpoint reparametrizations composed with
/// rotations.
pub fn random_homeo(rng: &mut ChaCha8Rng) -> CircleHomeo {
    let rotation = Rational::new(rng.gen_range(0..64).into(), 64.into());
    if rng.gen_bool(0.4) {
        return CircleHomeo::rotation(&rotation);
    }
    let k = rng.gen_range(1..=2usize);
    let ts = random_distinct(rng, k, 16)
        .into_iter()
        .filter(|t| t > &rat_int(0))
        .collect::<Vec<_>>();
    let vs = random_distinct(rng, ts.len(), 16)
        .into_iter()
        .filter(|v| v > &rat_int(0))
        .collect::<Vec<_>>();
    let m = ts.len().min(vs.len());
    let mut bps = vec![(rat_int(0), rat_int(0))];
    for i in 0..m {
        bps.push((ts[i].clone(), vs[i].clone()));
    }
    bps.push((rat_int(1), rat_int(1)));
    let phi = PLFunction::new(bps).expect("sorted breakpoints");
    CircleHomeo::new(phi, &rotation).expect("increasing interior values")
}
