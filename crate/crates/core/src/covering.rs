//! Finite cyclic covers of the circle, lifts of n-valued maps, the deck
//! action, and the averaging identity for the index.
//!
//! Every finite connected cover of the circle is cyclic, so a cover is just
//! its fold count `k`, with projection `t -> k t mod 1` and deck group
//! `Z/k` acting by rotation by `1/k`.
//!
//! Lift existence is decided by exhaustive sheet enumeration: the pullback
//! of the base map along the projection has `n` strand continuations, each
//! of which can start on any of the `k` sheets; of the `k^n` candidate
//! strand systems exactly those that close up into a valid map on the cover
//! are lifts. The enumeration doubles as an oracle: distinctness of the
//! candidates is inherited from the base map, so only closure is decided.

use thiserror::Error;

use crate::index::{index_crossing, index_schirmer, is_admissible, IndexError};
use crate::lefschetz::lefschetz;
use crate::nmap::{CirclePoint, NValuedCircleMap, PLFunction, Permutation};
use crate::rational::{rat_int, Rational};
use crate::region::{Arc, OpenArcSet};

/// The k-fold cyclic cover of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicCover {
    k: usize,
}

impl CyclicCover {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "cover needs at least one sheet");
        CyclicCover { k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The covering projection `t -> k t mod 1`.
    pub fn project(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(p.coordinate() * rat_int(self.k as i64))
    }

    /// Preimage of a region: each arc pulls back to `k` arcs of a `k`-th of
    /// its length.
    pub fn preimage_region(&self, region: &OpenArcSet) -> OpenArcSet {
        if region.is_empty() || region.is_whole_circle() {
            return region.clone();
        }
        let k = rat_int(self.k as i64);
        let arcs = region
            .arcs()
            .iter()
            .flat_map(|a| {
                (0..self.k).map(move |j| {
                    Arc::new(
                        (a.start() + rat_int(j as i64)) / &k,
                        a.length() / &k,
                    )
                    .expect("scaled arc is proper")
                })
            })
            .collect();
        OpenArcSet::from_arcs(arcs).expect("preimage arcs stay disjoint")
    }
}

/// A deck transformation of the k-fold cover: rotation by `j/k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeckElement {
    j: usize,
    k: usize,
}

impl DeckElement {
    pub fn new(j: usize, k: usize) -> Self {
        assert!(k >= 1);
        DeckElement { j: j % k, k }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All elements of the deck group, identity first.
    pub fn all(cover: &CyclicCover) -> Vec<DeckElement> {
        (0..cover.k).map(|j| DeckElement::new(j, cover.k)).collect()
    }

    /// The rotation amount `j/k`.
    pub fn translation(&self) -> Rational {
        Rational::new((self.j as i64).into(), (self.k as i64).into())
    }

    pub fn compose(&self, other: &DeckElement) -> DeckElement {
        assert_eq!(self.k, other.k);
        DeckElement::new(self.j + other.j, self.k)
    }
}

/// A lift of `base` through `cover`: an n-valued map on the cover circle
/// whose elementwise projection agrees with the base map over the
/// projection of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedMap {
    map: NValuedCircleMap,
    cover: CyclicCover,
    base: NValuedCircleMap,
}

impl LiftedMap {
    pub fn map(&self) -> &NValuedCircleMap {
        &self.map
    }

    pub fn cover(&self) -> &CyclicCover {
        &self.cover
    }

    pub fn base(&self) -> &NValuedCircleMap {
        &self.base
    }

    /// Checks the commuting square at one parameter of the cover circle.
    pub fn commutes_at(&self, t_bar: &Rational) -> bool {
        let mut projected: Vec<CirclePoint> = self
            .map
            .evaluate(t_bar)
            .expect("parameter in range")
            .iter()
            .map(|p| self.cover.project(p))
            .collect();
        projected.sort();
        projected.dedup();
        let downstairs = CirclePoint::new(t_bar * rat_int(self.cover.k as i64));
        let base_values = self
            .base
            .evaluate(downstairs.coordinate())
            .expect("projected parameter in range");
        projected == base_values
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("no lift of the map exists through the {0}-fold cover")]
    NoLiftExists(usize),
    #[error("sheet enumeration needs {needed} candidates, over the budget {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Default cap on the `k^n` sheet enumeration.
pub const DEFAULT_LIFT_ENUM_BUDGET: u128 = 4096;

/// Strand continuations of `base` pulled back along the k-fold projection:
/// going once around the cover circle traverses the base circle k times,
/// chaining strands through the monodromy.
fn pullback_strands(base: &NValuedCircleMap, k: usize) -> Vec<PLFunction> {
    let kq = rat_int(k as i64);
    (0..base.n())
        .map(|start| {
            let mut bps: Vec<(Rational, Rational)> = Vec::new();
            let mut strand = start;
            let mut offset = Rational::from_integer(0.into());
            for r in 0..k {
                let r_q = rat_int(r as i64);
                for (t, v) in base.strand(strand).breakpoints() {
                    let t_bar = (t + &r_q) / &kq;
                    let val = v + &offset;
                    if bps.last().map(|(prev, _)| prev != &t_bar).unwrap_or(true) {
                        bps.push((t_bar, val));
                    }
                }
                offset += Rational::from_integer(base.closure_offset(strand));
                strand = base.monodromy().apply(strand);
            }
            PLFunction::new(bps).expect("pullback breakpoints are increasing")
        })
        .collect()
}

/// Enumerates all lifts of `base` through `cover`, in lexicographic sheet
/// order. The returned list is closed under the deck action; an empty list
/// means no lift exists. Fails only when `k^n` exceeds `budget`.
pub fn lift_map(
    base: &NValuedCircleMap,
    cover: &CyclicCover,
    budget: u128,
) -> Result<Vec<LiftedMap>, CoveringError> {
    let n = base.n();
    let k = cover.k;
    match (k as u128).checked_pow(n as u32) {
        Some(needed) if needed <= budget => {}
        needed => {
            return Err(CoveringError::EnumerationBudget {
                needed: needed.unwrap_or(u128::MAX),
                budget,
            })
        }
    }
    let pullback = pullback_strands(base, k);
    let kq = rat_int(k as i64);
    let mut lifts = Vec::new();
    let mut sheets = vec![0usize; n];
    'sheets: loop {
        let strands: Vec<PLFunction> = pullback
            .iter()
            .zip(&sheets)
            .map(|(g, &c)| {
                let c = rat_int(c as i64);
                PLFunction::new(
                    g.breakpoints()
                        .iter()
                        .map(|(t, v)| (t.clone(), (v + &c) / &kq))
                        .collect(),
                )
                .expect("scaling preserves breakpoint order")
            })
            .collect();
        let candidate = NValuedCircleMap::new(strands, Permutation::identity(n))
            .expect("candidate is structurally sound");
        if let Some(sigma) = candidate.derive_monodromy() {
            let map = NValuedCircleMap::new(candidate.strands().to_vec(), sigma)
                .expect("closing permutation fits");
            debug_assert!(map.is_valid());
            lifts.push(LiftedMap {
                map,
                cover: *cover,
                base: base.clone(),
            });
        }
        // next sheet vector, lexicographically
        let mut pos = n;
        loop {
            if pos == 0 {
                break 'sheets;
            }
            pos -= 1;
            sheets[pos] += 1;
            if sheets[pos] < k {
                break;
            }
            sheets[pos] = 0;
        }
    }
    Ok(lifts)
}

/// The deck action: every strand value is shifted by `j/k`. The result is
/// again a lift of the same base map.
pub fn deck_act(alpha: &DeckElement, lift: &LiftedMap) -> LiftedMap {
    assert_eq!(alpha.k, lift.cover.k);
    LiftedMap {
        map: lift.map.rotate_values(&alpha.translation()),
        cover: lift.cover,
        base: lift.base.clone(),
    }
}

/// Per-deck-element data for the averaging identity
/// `ind(f, U) * k = sum_alpha ind(alpha . lift, p^{-1}(U))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragingReport {
    pub k: usize,
    pub base_index: i64,
    pub translate_indices: Vec<i64>,
}

impl AveragingReport {
    pub fn deck_sum(&self) -> i64 {
        self.translate_indices.iter().sum()
    }

    /// The deck sum must be exactly divisible by k, a strictly stronger
    /// statement than rational equality of the average.
    pub fn sum_divisible(&self) -> bool {
        self.deck_sum() % self.k as i64 == 0
    }

    pub fn pass(&self) -> bool {
        self.sum_divisible() && self.deck_sum() == self.base_index * self.k as i64
    }
}

fn index_both(map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
    let s = index_schirmer(map, region)?;
    let c = index_crossing(map, region)?;
    assert_eq!(s, c, "index algorithms disagree");
    Ok(s)
}

/// Verifies the averaging identity over the deck translates of the first
/// lift (lexicographically smallest sheet choice). Also checks that every
/// translate is admissible over the preimage region.
pub fn verify_averaging(
    base: &NValuedCircleMap,
    cover: &CyclicCover,
    region: &OpenArcSet,
    budget: u128,
) -> Result<AveragingReport, CoveringError> {
    let base_index = index_both(base, region)?;
    let lifts = lift_map(base, cover, budget)?;
    let chosen = lifts.first().ok_or(CoveringError::NoLiftExists(cover.k))?;
    let upstairs = cover.preimage_region(region);
    let mut translate_indices = Vec::with_capacity(cover.k);
    for alpha in DeckElement::all(cover) {
        let translate = deck_act(&alpha, chosen);
        if !is_admissible(translate.map(), &upstairs) {
            return Err(CoveringError::Index(IndexError::NotAdmissible(format!(
                "deck translate {} over the preimage region",
                alpha.j
            ))));
        }
        translate_indices.push(index_both(translate.map(), &upstairs)?);
    }
    Ok(AveragingReport {
        k: cover.k,
        base_index,
        translate_indices,
    })
}

/// Per-deck-element data for `L(f) * k = sum_alpha L(alpha . lift)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzAveragingReport {
    pub k: usize,
    pub base_lefschetz: i64,
    pub translate_lefschetz: Vec<i64>,
}

impl LefschetzAveragingReport {
    pub fn deck_sum(&self) -> i64 {
        self.translate_lefschetz.iter().sum()
    }

    pub fn sum_divisible(&self) -> bool {
        self.deck_sum() % self.k as i64 == 0
    }

    pub fn pass(&self) -> bool {
        self.sum_divisible() && self.deck_sum() == self.base_lefschetz * self.k as i64
    }
}

/// The Lefschetz averaging corollary, over deck translates of the first lift.
pub fn verify_lefschetz_averaging(
    base: &NValuedCircleMap,
    cover: &CyclicCover,
    budget: u128,
) -> Result<LefschetzAveragingReport, CoveringError> {
    let lifts = lift_map(base, cover, budget)?;
    let chosen = lifts.first().ok_or(CoveringError::NoLiftExists(cover.k))?;
    let translate_lefschetz = DeckElement::all(cover)
        .iter()
        .map(|alpha| lefschetz(deck_act(alpha, chosen).map()).value)
        .collect();
    Ok(LefschetzAveragingReport {
        k: cover.k,
        base_lefschetz: lefschetz(base).value,
        translate_lefschetz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    #[test]
    fn doubling_map_lifts_three_ways_through_triple_cover() {
        let base = NValuedCircleMap::linear_map(1, 2);
        let cover = CyclicCover::new(3);
        let lifts = lift_map(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET).unwrap();
        assert_eq!(lifts.len(), 3);
        // the lifts are t -> 2t + j/3
        for (j, lift) in lifts.iter().enumerate() {
            let s = lift.map().strand(0);
            assert_eq!(s.eval(&rat_int(0)), rat(j as i64, 3));
            assert_eq!(s.eval(&rat(1, 2)), rat_int(1) + rat(j as i64, 3));
            for t in [rat_int(0), rat(1, 7), rat(5, 6)] {
                assert!(lift.commutes_at(&t));
            }
        }
    }

    #[test]
    fn constant_map_lifts_choose_preimages() {
        let base = NValuedCircleMap::constant_map(&[cp(0, 1), cp(1, 2)]).unwrap();
        let cover = CyclicCover::new(2);
        let lifts = lift_map(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET).unwrap();
        assert_eq!(lifts.len(), 4);
        for lift in &lifts {
            assert_eq!(lift.map().n(), 2);
            assert!(lift.map().is_valid());
            assert!(lift.commutes_at(&rat(1, 3)));
        }
    }

    #[test]
    fn unsplit_square_root_map_has_no_double_cover_lift() {
        let base = NValuedCircleMap::linear_map(2, 1);
        let cover = CyclicCover::new(2);
        let lifts = lift_map(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET).unwrap();
        assert!(lifts.is_empty());
        assert!(matches!(
            verify_averaging(
                &base,
                &cover,
                &OpenArcSet::whole_circle(),
                DEFAULT_LIFT_ENUM_BUDGET
            ),
            Err(CoveringError::NoLiftExists(2))
        ));
    }

    #[test]
    fn lift_lists_are_deck_closed() {
        for (n, d, k) in [(1usize, 2i64, 3usize), (2, 6, 2), (2, 0, 3), (3, 0, 2)] {
            let base = NValuedCircleMap::linear_map(n, d);
            let cover = CyclicCover::new(k);
            let lifts = lift_map(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET).unwrap();
            assert!(lifts.len() <= k.pow(n as u32));
            for lift in &lifts {
                for alpha in DeckElement::all(&cover) {
                    let translated = deck_act(&alpha, lift);
                    assert!(
                        lifts.iter().any(|l| l.map() == translated.map()),
                        "deck action leaves the lift list for ({n},{d},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn deck_action_is_a_group_action() {
        let base = NValuedCircleMap::linear_map(1, 2);
        let cover = CyclicCover::new(3);
        let lift = &lift_map(&base, &cover, DEFAULT_LIFT_ENUM_BUDGET).unwrap()[0];
        let a = DeckElement::new(1, 3);
        let b = DeckElement::new(2, 3);
        let lhs = deck_act(&a, &deck_act(&b, lift));
        let rhs = deck_act(&a.compose(&b), lift);
        assert_eq!(lhs.map(), rhs.map());
        let id = DeckElement::new(0, 3);
        assert_eq!(deck_act(&id, lift).map(), lift.map());
        // j = 1 sends t -> 2t to t -> 2t + 1/3
        let moved = deck_act(&a, lift);
        assert_eq!(moved.map().strand(0).eval(&rat_int(0)), rat(1, 3));
    }

    #[test]
    fn averaging_for_doubling_map_through_triple_cover() {
        let base = NValuedCircleMap::linear_map(1, 2);
        let cover = CyclicCover::new(3);
        let rep = verify_averaging(
            &base,
            &cover,
            &OpenArcSet::whole_circle(),
            DEFAULT_LIFT_ENUM_BUDGET,
        )
        .unwrap();
        assert_eq!(rep.base_index, -1);
        assert_eq!(rep.translate_indices, vec![-1, -1, -1]);
        assert!(rep.pass());
    }

    #[test]
    fn averaging_for_constant_map_through_double_cover() {
        let base = NValuedCircleMap::constant_map(&[cp(0, 1), cp(1, 2)]).unwrap();
        let cover = CyclicCover::new(2);
        let rep = verify_averaging(
            &base,
            &cover,
            &OpenArcSet::whole_circle(),
            DEFAULT_LIFT_ENUM_BUDGET,
        )
        .unwrap();
        assert_eq!(rep.base_index, 2);
        assert_eq!(rep.deck_sum(), 4);
        assert!(rep.pass());
    }

    #[test]
    fn averaging_on_a_proper_region() {
        let base = NValuedCircleMap::linear_map(1, 2);
        let cover = CyclicCover::new(2);
        let region = OpenArcSet::arc(rat(7, 8), rat(1, 4)).unwrap(); // holds the fixed point 0
        let rep =
            verify_averaging(&base, &cover, &region, DEFAULT_LIFT_ENUM_BUDGET).unwrap();
        assert_eq!(rep.base_index, -1);
        assert!(rep.pass());
    }

    #[test]
    fn lefschetz_averaging_examples() {
        let rep = verify_lefschetz_averaging(
            &NValuedCircleMap::linear_map(1, 2),
            &CyclicCover::new(3),
            DEFAULT_LIFT_ENUM_BUDGET,
        )
        .unwrap();
        assert_eq!(rep.base_lefschetz, -1);
        assert_eq!(rep.translate_lefschetz, vec![-1, -1, -1]);
        assert!(rep.pass());

        let constant = NValuedCircleMap::constant_map(&[cp(0, 1)]).unwrap();
        let rep = verify_lefschetz_averaging(
            &constant,
            &CyclicCover::new(2),
            DEFAULT_LIFT_ENUM_BUDGET,
        )
        .unwrap();
        assert_eq!(rep.base_lefschetz, 1);
        assert_eq!(rep.deck_sum(), 2);
        assert!(rep.pass());

        let rep = verify_lefschetz_averaging(
            &NValuedCircleMap::linear_map(2, 6),
            &CyclicCover::new(2),
            DEFAULT_LIFT_ENUM_BUDGET,
        )
        .unwrap();
        assert_eq!(rep.base_lefschetz, -4);
        assert!(rep.pass());
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let base = NValuedCircleMap::linear_map(4, 0);
        let cover = CyclicCover::new(9);
        assert!(matches!(
            lift_map(&base, &cover, 4096),
            Err(CoveringError::EnumerationBudget { needed: 6561, .. })
        ));
    }

    #[test]
    fn preimage_region_scales_arcs() {
        let cover = CyclicCover::new(2);
        let u = OpenArcSet::arc(rat(1, 4), rat(1, 2)).unwrap();
        let up = cover.preimage_region(&u);
        assert_eq!(up.to_string(), "1/8+1/4,5/8+1/4");
        assert!(cover.preimage_region(&OpenArcSet::whole_circle()).is_whole_circle());
    }
}
