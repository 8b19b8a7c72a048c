//! Fixed points of n-valued circle maps and the local fixed point index.
//!
//! Two independent algorithms compute the index of an admissible pair:
//!
//! * [`index_schirmer`] follows the constructive definition: make the map
//!   fix-finite by an admissible perturbation, isolate each fixed point in
//!   a simply connected arc, split the map there, and sum the classical
//!   one-dimensional indices of the unique fixed selections;
//! * [`index_crossing`] counts signed crossings of strand continuations
//!   with the diagonal directly on the region, without ever perturbing.
//!
//! Their agreement on every admissible pair is the executable content of
//! the uniqueness theorem exercised by the `harness` module.
//!
//! All arithmetic is exact; admissibility (no fixed point on the region
//! boundary) is a hard error, never a silent exclusion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::homotopy::{make_homotopy, StrandHomotopy};
use crate::nmap::{CirclePoint, NValuedCircleMap, PLFunction};
use crate::rational::{
    dist_to_int, integers_in, is_integer, mod1, rat, rat_int, sign, Rational,
};
use crate::region::{Arc, OpenArcSet};

/// An isolated fixed point of one strand.
///
/// `slope_in` / `slope` are the strand slopes just before and just after
/// the point (continuing through the seam when the point sits at 0). For a
/// fixed point interior to a segment the two agree. When the two one-sided
/// crossing directions disagree the point is a touch of index 0 and is
/// flagged `degenerate`; otherwise `local_index == sign(1 - slope)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub location: CirclePoint,
    pub strand: usize,
    pub slope_in: Rational,
    pub slope: Rational,
    pub local_index: i64,
    pub degenerate: bool,
}

/// A maximal parameter interval on which one strand equals the diagonal
/// plus the integer `offset`; every point of it is fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateInterval {
    pub strand: usize,
    pub start: Rational,
    pub end: Rational,
    pub offset: BigInt,
}

impl DegenerateInterval {
    /// Closed-interval membership as a circle subset (the interval may end
    /// at parameter 1, which is circle point 0).
    pub fn closure_contains(&self, p: &CirclePoint) -> bool {
        let x = p.coordinate();
        (x >= &self.start && x <= &self.end) || (self.end == rat_int(1) && x.is_zero())
    }
}

/// Complete fixed point data of a map: isolated points plus degenerate
/// intervals. Every circle fixed point appears exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub points: Vec<FixedPointRecord>,
    pub degenerate_intervals: Vec<DegenerateInterval>,
}

impl FixedPointReport {
    pub fn is_fix_finite(&self) -> bool {
        self.degenerate_intervals.is_empty()
    }

    /// Sorted distinct locations of the isolated fixed points.
    pub fn point_locations(&self) -> Vec<CirclePoint> {
        let mut locs: Vec<CirclePoint> =
            self.points.iter().map(|p| p.location.clone()).collect();
        locs.sort();
        locs.dedup();
        locs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("pair is not admissible: fixed point at {0} meets the region boundary")]
    NotAdmissible(String),
}

/// A map together with a region whose boundary avoids its fixed points.
#[derive(Debug, Clone)]
pub struct AdmissiblePair {
    map: NValuedCircleMap,
    region: OpenArcSet,
}

impl AdmissiblePair {
    pub fn new(map: NValuedCircleMap, region: OpenArcSet) -> Result<Self, IndexError> {
        check_admissible(&map, &region)?;
        Ok(AdmissiblePair { map, region })
    }

    pub fn map(&self) -> &NValuedCircleMap {
        &self.map
    }

    pub fn region(&self) -> &OpenArcSet {
        &self.region
    }
}

/// True when the circle point is fixed: some strand value equals it mod 1.
pub fn is_fixed(map: &NValuedCircleMap, p: &CirclePoint) -> bool {
    let t = p.coordinate();
    map.strands()
        .iter()
        .any(|s| is_integer(&(s.eval(t) - t)))
}

/// No fixed point may lie on the region boundary. Degenerate intervals are
/// closed fixed sets, so their endpoint closures are covered by the same
/// pointwise test.
pub fn is_admissible(map: &NValuedCircleMap, region: &OpenArcSet) -> bool {
    region.boundary_points().iter().all(|b| !is_fixed(map, b))
}

fn check_admissible(map: &NValuedCircleMap, region: &OpenArcSet) -> Result<(), IndexError> {
    for b in region.boundary_points() {
        if is_fixed(map, &b) {
            return Err(IndexError::NotAdmissible(b.to_string()));
        }
    }
    Ok(())
}

/// Enumerates every fixed point exactly.
///
/// For each strand segment of slope != 1, the solutions of
/// `s(t) - t = m` are isolated and rational; segments of slope 1 lying on
/// an integer-shifted diagonal are reported whole as degenerate intervals.
/// The seam is handled without duplication: parameter 1 is identified with
/// parameter 0, and one-sided slopes at the seam come from the monodromy.
pub fn fixed_points(map: &NValuedCircleMap) -> FixedPointReport {
    let one = rat_int(1);
    let n = map.n();

    // degenerate runs first, merging consecutive diagonal segments
    let mut intervals: Vec<DegenerateInterval> = Vec::new();
    for i in 0..n {
        let mut current: Option<DegenerateInterval> = None;
        for ((t0, v0), (t1, v1)) in map.strand(i).segments() {
            let g0 = v0 - t0;
            let g1 = v1 - t1;
            let diagonal = g0 == g1 && is_integer(&g0);
            if diagonal {
                let offset = g0.to_integer();
                match current.as_mut() {
                    Some(run) if run.end == *t0 && run.offset == offset => {
                        run.end = t1.clone();
                    }
                    _ => {
                        if let Some(run) = current.take() {
                            intervals.push(run);
                        }
                        current = Some(DegenerateInterval {
                            strand: i,
                            start: t0.clone(),
                            end: t1.clone(),
                            offset,
                        });
                    }
                }
            } else if let Some(run) = current.take() {
                intervals.push(run);
            }
        }
        if let Some(run) = current.take() {
            intervals.push(run);
        }
    }

    // isolated candidates: exact roots of s(t) - t - m on non-diagonal segments
    let mut candidates: BTreeMap<(usize, Rational), ()> = BTreeMap::new();
    for i in 0..n {
        for ((t0, v0), (t1, v1)) in map.strand(i).segments() {
            let g0 = v0 - t0;
            let g1 = v1 - t1;
            if g0 == g1 {
                continue; // slope exactly 1: diagonal handled above, else no roots
            }
            let (lo, hi) = if g0 <= g1 {
                (g0.clone(), g1.clone())
            } else {
                (g1.clone(), g0.clone())
            };
            for m in integers_in(&lo, &hi) {
                let m = Rational::from_integer(m);
                let t_star = t0 + (&m - &g0) / (&g1 - &g0) * (t1 - t0);
                debug_assert!(&t_star >= t0 && &t_star <= t1);
                if t_star < one {
                    candidates.insert((i, t_star), ());
                }
            }
        }
    }

    // drop candidates absorbed by a degenerate interval
    let absorbed = |strand: usize, t: &Rational| -> bool {
        intervals.iter().any(|iv| {
            (iv.strand == strand && t >= &iv.start && t <= &iv.end)
                || (t.is_zero()
                    && iv.end == one
                    && map.monodromy().apply(iv.strand) == strand)
        })
    };

    let mut points = Vec::new();
    for (i, t_star) in candidates.into_keys() {
        if absorbed(i, &t_star) {
            continue;
        }
        let slope = outgoing_slope(map, i, &t_star);
        let slope_in = incoming_slope(map, i, &t_star);
        let s_in = sign(&(&one - &slope_in));
        let s_out = sign(&(&one - &slope));
        debug_assert!(s_in != 0 && s_out != 0, "slope-1 side must be an interval");
        let local_index = (s_in + s_out) / 2;
        points.push(FixedPointRecord {
            location: CirclePoint::new(t_star),
            strand: i,
            degenerate: s_in != s_out,
            slope_in,
            slope,
            local_index,
        });
    }
    points.sort_by(|a, b| (&a.location, a.strand).cmp(&(&b.location, b.strand)));

    FixedPointReport {
        points,
        degenerate_intervals: intervals,
    }
}

fn segment_slope(seg: (&(Rational, Rational), &(Rational, Rational))) -> Rational {
    (&seg.1 .1 - &seg.0 .1) / (&seg.1 .0 - &seg.0 .0)
}

/// Slope of strand `i` immediately after parameter `t` in `[0, 1)`.
fn outgoing_slope(map: &NValuedCircleMap, i: usize, t: &Rational) -> Rational {
    let s = map.strand(i);
    for seg in s.segments() {
        if t >= &seg.0 .0 && t < &seg.1 .0 {
            return segment_slope(seg);
        }
    }
    unreachable!("parameter {t} not covered by strand {i}")
}

/// Slope immediately before `t`, crossing the seam via the monodromy when
/// `t = 0`: the branch arriving at circle point 0 on strand `i` is the
/// strand that the monodromy sends to `i`.
fn incoming_slope(map: &NValuedCircleMap, i: usize, t: &Rational) -> Rational {
    if t.is_zero() {
        let j = map.monodromy().inverse().apply(i);
        let s = map.strand(j);
        let last = s.segments().last().expect("strand has a segment");
        return segment_slope(last);
    }
    let s = map.strand(i);
    for seg in s.segments() {
        if t > &seg.0 .0 && t <= &seg.1 .0 {
            return segment_slope(seg);
        }
    }
    unreachable!("parameter {t} not covered by strand {i}")
}

/// Both index algorithms return 0 on the empty region.
pub fn empty_region_index(_map: &NValuedCircleMap) -> i64 {
    0
}

/// Deterministic perturbation height: strictly less than half the minimum
/// strand distinctness gap and half the minimum nonzero distance of
/// `s(t) - t` to the integers at breakpoints.
fn perturbation_height(map: &NValuedCircleMap) -> Rational {
    let mut m = rat_int(1);
    let n = map.n();
    for i in 0..n {
        for j in (i + 1)..n {
            let grid = map.strand(i).merged_grid(map.strand(j));
            for t in &grid {
                let d = dist_to_int(&(map.strand(i).eval(t) - map.strand(j).eval(t)));
                debug_assert!(!d.is_zero(), "perturbing an invalid map");
                if d < m {
                    m = d;
                }
            }
        }
    }
    for s in map.strands() {
        for (t, v) in s.breakpoints() {
            let d = dist_to_int(&(v - t));
            if !d.is_zero() && d < m {
                m = d;
            }
        }
    }
    m / rat_int(4)
}

/// Replaces every degenerate interval by a PL bump of exact height epsilon,
/// returning the fix-finite map together with the straight-line homotopy
/// connecting it to the input. Maps that are already fix-finite come back
/// unchanged under the identity homotopy.
///
/// A proper interval is bumped off the diagonal leaving exactly its two
/// endpoints fixed; a full identity strand is wiggled above and below the
/// diagonal, leaving two transverse fixed points of indices +1 and -1.
pub fn fix_finite_perturb(map: &NValuedCircleMap) -> (NValuedCircleMap, StrandHomotopy) {
    let report = fixed_points(map);
    if report.is_fix_finite() {
        let h = make_homotopy(map.clone(), map.clone()).expect("identity homotopy");
        return (map.clone(), h);
    }
    let eps = perturbation_height(map);
    let whole = (rat_int(0), rat_int(1));
    let mut strands: Vec<PLFunction> = map.strands().to_vec();
    for iv in &report.degenerate_intervals {
        let s = &strands[iv.strand];
        let mut bps: BTreeMap<Rational, Rational> = s
            .breakpoints()
            .iter()
            .filter(|(t, _)| t <= &iv.start || t >= &iv.end)
            .cloned()
            .collect();
        let offset = Rational::from_integer(iv.offset.clone());
        if (iv.start.clone(), iv.end.clone()) == whole {
            // identity strand: wiggle across the diagonal
            for (t, dv) in [
                (rat(1, 4), eps.clone()),
                (rat(1, 2), rat_int(0)),
                (rat(3, 4), -eps.clone()),
            ] {
                bps.insert(t.clone(), &t + &offset + dv);
            }
        } else {
            let mid = (&iv.start + &iv.end) / rat_int(2);
            bps.insert(mid.clone(), &mid + &offset + &eps);
        }
        strands[iv.strand] =
            PLFunction::new(bps.into_iter().collect()).expect("bump keeps breakpoints sorted");
    }
    let perturbed = NValuedCircleMap::new(strands, map.monodromy().clone())
        .expect("perturbation preserves structure");
    debug_assert!(perturbed.is_valid());
    let h = make_homotopy(map.clone(), perturbed.clone())
        .expect("perturbation stays within the distinctness margin");
    (perturbed, h)
}

/// The classical one-dimensional fixed point index of a single-valued
/// branch over an interval: half the difference of the boundary signs of
/// `branch(t) - t - m`. Both boundary values must be nonzero.
fn interval_index(branch: &PLFunction, m: &Rational) -> i64 {
    let a = branch.domain_start();
    let b = branch.domain_end();
    let ga = branch.eval(a) - a - m;
    let gb = branch.eval(b) - b - m;
    let (sa, sb) = (sign(&ga), sign(&gb));
    assert!(sa != 0 && sb != 0, "branch endpoint on the diagonal");
    (sa - sb) / 2
}

/// Largest deterministic isolating arc around the fixed point `x`: bounded
/// by midpoints to the circularly neighboring fixed points and clipped to
/// the region component containing `x`. `all_fixed` must be the sorted
/// list of every fixed point of the map, including `x`.
pub fn isolating_arc(
    x: &CirclePoint,
    all_fixed: &[CirclePoint],
    region: &OpenArcSet,
) -> Arc {
    let n = all_fixed.len();
    let pos = all_fixed
        .binary_search(x)
        .expect("x must be among the fixed points");
    let xc = x.coordinate();

    let midpoints = if n >= 2 {
        let prev = all_fixed[(pos + n - 1) % n].coordinate();
        let next = all_fixed[(pos + 1) % n].coordinate();
        let mid_prev = prev + mod1(&(xc - prev)) / rat_int(2);
        let mid_next = xc + mod1(&(next - xc)) / rat_int(2);
        Some((mid_prev, mid_next))
    } else {
        None
    };

    if region.is_whole_circle() {
        return match midpoints {
            Some((mid_prev, mid_next)) => {
                let len = mod1(&(&mid_next - &mid_prev));
                Arc::new(mid_prev, len).expect("midpoint arc is proper")
            }
            // the single fixed point: puncture the circle at its antipode
            None => Arc::new(xc + rat(1, 2), rat_int(1)).expect("punctured circle"),
        };
    }

    let comp = region
        .component_containing(x)
        .expect("fixed point inside the region");
    let s = comp.start();
    let l = comp.length();
    let x_rel = mod1(&(xc - s));
    let (lo, hi) = match midpoints {
        Some((mid_prev, mid_next)) => {
            let mp_rel = mod1(&(&mid_prev - s));
            let mn_rel = mod1(&(&mid_next - s));
            let lo = if mp_rel < x_rel { mp_rel } else { rat_int(0) };
            let hi = if mn_rel > x_rel && &mn_rel < l {
                mn_rel
            } else {
                l.clone()
            };
            (lo, hi)
        }
        None => (rat_int(0), l.clone()),
    };
    Arc::new(s + &lo, &hi - &lo).expect("isolating arc is proper")
}

/// The constructive index: perturb to a fix-finite map, isolate each fixed
/// point of the region in a simply connected arc, split the map there, and
/// sum the classical indices of the unique fixed selections.
pub fn index_schirmer(map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
    check_admissible(map, region)?;
    if region.is_empty() {
        return Ok(0);
    }
    // fixed points of every intermediate map stay inside the original fixed
    // set, so the perturbation homotopy is admissible for this region
    let (fmap, _homotopy) = fix_finite_perturb(map);
    let report = fixed_points(&fmap);
    debug_assert!(report.is_fix_finite());
    let all = report.point_locations();
    let mut total = 0i64;
    for x in &all {
        if !(region.is_whole_circle() || region.contains(x)) {
            continue;
        }
        let arc = isolating_arc(x, &all, region);
        let branches = fmap.branches_over(arc.start(), arc.length());
        let t_star = arc.start() + mod1(&(x.coordinate() - arc.start()));
        let mut fixed_branch: Option<(&PLFunction, Rational)> = None;
        for b in &branches {
            let diff = b.eval(&t_star) - &t_star;
            if is_integer(&diff) {
                assert!(
                    fixed_branch.is_none(),
                    "two selections fixed at the same point"
                );
                fixed_branch = Some((b, diff));
            }
        }
        let (branch, m) = fixed_branch.expect("one selection is fixed at x");
        total += interval_index(branch, &m);
    }
    Ok(total)
}

/// True when the strand is an integer translate of the identity, so that
/// every circle point is fixed on it.
fn is_identity_strand(s: &PLFunction) -> bool {
    let d0 = s.start_value() - s.domain_start();
    if !is_integer(&d0) {
        return false;
    }
    s.breakpoints().iter().all(|(t, v)| v - t == d0)
}

/// Signed diagonal crossings of one branch over its whole domain, summed
/// over all integer offsets. Endpoints must avoid the diagonal.
fn branch_crossings(branch: &PLFunction) -> i64 {
    let a = branch.domain_start();
    let b = branch.domain_end();
    let ga = branch.eval(a) - a;
    let gb = branch.eval(b) - b;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (t, v) in branch.breakpoints() {
        let g = v - t;
        if lo.as_ref().is_none_or(|x| &g < x) {
            lo = Some(g.clone());
        }
        if hi.as_ref().is_none_or(|x| &g > x) {
            hi = Some(g);
        }
    }
    let (lo, hi) = (lo.unwrap(), hi.unwrap());
    let mut total = 0i64;
    for m in integers_in(&lo, &hi) {
        let m = Rational::from_integer(m);
        let (sa, sb) = (sign(&(&ga - &m)), sign(&(&gb - &m)));
        assert!(sa != 0 && sb != 0, "branch endpoint on the diagonal");
        total += (sa - sb) / 2;
    }
    total
}

/// A cut point that is fixed on no strand other than full identity strands.
fn whole_circle_cut(map: &NValuedCircleMap, skip: &[bool]) -> Rational {
    let report = fixed_points(map);
    let mut markers: Vec<Rational> = Vec::new();
    for p in &report.points {
        if !skip[p.strand] {
            markers.push(p.location.coordinate().clone());
        }
    }
    for iv in &report.degenerate_intervals {
        if !skip[iv.strand] {
            markers.push(mod1(&iv.start));
            markers.push(mod1(&iv.end));
        }
    }
    markers.sort();
    markers.dedup();
    if markers.is_empty() {
        return rat_int(0);
    }
    let not_fixed_off_identity = |c: &Rational| -> bool {
        map.strands()
            .iter()
            .enumerate()
            .all(|(i, s)| skip[i] || !is_integer(&(s.eval(c) - c)))
    };
    let k = markers.len();
    for i in 0..k {
        let a = &markers[i];
        let b = &markers[(i + 1) % k];
        let gap = if i + 1 == k {
            b + rat_int(1) - a
        } else {
            b - a
        };
        let c = mod1(&(a + gap / rat_int(2)));
        if not_fixed_off_identity(&c) {
            return c;
        }
    }
    unreachable!("the complement of a finite fixed set is nonempty")
}

/// The sign-crossing index: sums, over every strand continuation branch of
/// the region's arcs and every integer offset, half the difference of the
/// boundary signs of `branch(t) - t - m`. No perturbation is ever applied;
/// a whole-circle region is first cut at a non-fixed point (full identity
/// strands contribute zero and are skipped, since no point avoids them).
pub fn index_crossing(map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
    check_admissible(map, region)?;
    if region.is_empty() {
        return Ok(0);
    }
    if region.is_whole_circle() {
        let skip: Vec<bool> = map.strands().iter().map(is_identity_strand).collect();
        if skip.iter().all(|&s| s) {
            return Ok(0);
        }
        let cut = whole_circle_cut(map, &skip);
        let branches = map.branches_over(&cut, &rat_int(1));
        let total = branches
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip[*i])
            .map(|(_, b)| branch_crossings(b))
            .sum();
        return Ok(total);
    }
    let mut total = 0i64;
    for arc in region.arcs() {
        for b in map.branches_over(arc.start(), arc.length()) {
            total += branch_crossings(&b);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmap::Permutation;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    fn identity_map() -> NValuedCircleMap {
        NValuedCircleMap::new(
            vec![PLFunction::linear(rat_int(0), rat_int(0), rat_int(1), rat_int(1))],
            Permutation::identity(1),
        )
        .unwrap()
    }

    #[test]
    fn doubling_map_has_one_fixed_point() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let r = fixed_points(&f);
        assert!(r.is_fix_finite());
        assert_eq!(r.points.len(), 1);
        let p = &r.points[0];
        assert_eq!(p.location, cp(0, 1));
        assert_eq!(p.slope, rat_int(2));
        assert_eq!(p.slope_in, rat_int(2));
        assert_eq!(p.local_index, -1);
        assert!(!p.degenerate);
    }

    #[test]
    fn linear_2_6_has_four_fixed_points() {
        let f = NValuedCircleMap::linear_map(2, 6);
        let r = fixed_points(&f);
        let locs = r.point_locations();
        assert_eq!(locs, vec![cp(0, 1), cp(1, 4), cp(1, 2), cp(3, 4)]);
        for p in &r.points {
            assert_eq!(p.slope, rat_int(3));
            assert_eq!(p.local_index, -1);
        }
    }

    #[test]
    fn identity_strand_is_one_degenerate_interval() {
        let r = fixed_points(&identity_map());
        assert!(r.points.is_empty());
        assert_eq!(r.degenerate_intervals.len(), 1);
        let iv = &r.degenerate_intervals[0];
        assert_eq!((iv.start.clone(), iv.end.clone()), (rat_int(0), rat_int(1)));
        assert_eq!(iv.offset, BigInt::from(0));
    }

    #[test]
    fn seam_fixed_point_not_duplicated() {
        // grid of linear maps: fixed point count is |n - d| for d != n
        for n in 1..=4usize {
            for d in -8i64..=8 {
                if d == n as i64 {
                    continue;
                }
                let f = NValuedCircleMap::linear_map(n, d);
                let r = fixed_points(&f);
                assert!(r.is_fix_finite());
                assert_eq!(
                    r.points.len() as i64,
                    (n as i64 - d).abs(),
                    "count mismatch for linear_map({n},{d})"
                );
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let inside = OpenArcSet::arc(rat(1, 4), rat(1, 2)).unwrap();
        assert!(is_admissible(&f, &inside));
        let on_boundary = OpenArcSet::arc(rat_int(0), rat(1, 2)).unwrap();
        assert!(!is_admissible(&f, &on_boundary));
        assert!(is_admissible(&f, &OpenArcSet::whole_circle()));
        assert!(is_admissible(&f, &OpenArcSet::empty()));
        // boundary point inside a degenerate interval is inadmissible
        assert!(!is_admissible(
            &identity_map(),
            &OpenArcSet::arc(rat(1, 3), rat(1, 3)).unwrap()
        ));
    }

    #[test]
    fn perturbing_identity_gives_cancelling_pair() {
        let (g, h) = fix_finite_perturb(&identity_map());
        let r = fixed_points(&g);
        assert!(r.is_fix_finite());
        assert_eq!(r.points.len(), 2);
        let mut indices: Vec<i64> = r.points.iter().map(|p| p.local_index).collect();
        indices.sort();
        assert_eq!(indices, vec![-1, 1]);
        assert_eq!(h.source(), &identity_map());
        assert_eq!(h.target(), &g);
    }

    #[test]
    fn perturbing_fix_finite_map_is_identity() {
        let f = NValuedCircleMap::linear_map(2, 1);
        let (g, h) = fix_finite_perturb(&f);
        assert_eq!(g, f);
        assert_eq!(h.source(), h.target());
    }

    #[test]
    fn perturbation_touches_only_degenerate_strand() {
        // strand 1 of 3 runs on the diagonal over [1/4, 1/2]
        let s0 = PLFunction::constant(rat(1, 8));
        let s1 = PLFunction::new(vec![
            (rat_int(0), rat(3, 8)),
            (rat(1, 4), rat(1, 4)),
            (rat(1, 2), rat(1, 2)),
            (rat_int(1), rat(3, 8)),
        ])
        .unwrap();
        let s2 = PLFunction::constant(rat(3, 4));
        let f = NValuedCircleMap::new(vec![s0, s1, s2], Permutation::identity(3)).unwrap();
        assert!(f.is_valid());
        let before = fixed_points(&f);
        assert_eq!(before.degenerate_intervals.len(), 1);
        let (g, _) = fix_finite_perturb(&f);
        assert_eq!(g.strand(0), f.strand(0));
        assert_eq!(g.strand(2), f.strand(2));
        assert_ne!(g.strand(1), f.strand(1));
        assert!(fixed_points(&g).is_fix_finite());
    }

    #[test]
    fn schirmer_on_linear_maps() {
        let whole = OpenArcSet::whole_circle();
        assert_eq!(
            index_schirmer(&NValuedCircleMap::linear_map(2, 1), &whole).unwrap(),
            1
        );
        assert_eq!(
            index_schirmer(&NValuedCircleMap::linear_map(2, 6), &whole).unwrap(),
            -4
        );
    }

    #[test]
    fn schirmer_normalization_on_constant_map() {
        let c = NValuedCircleMap::constant_map(&[cp(1, 4), cp(3, 4)]).unwrap();
        let u = OpenArcSet::arc(rat(1, 5), rat(1, 10)).unwrap();
        assert_eq!(index_schirmer(&c, &u).unwrap(), 1);
        assert_eq!(index_crossing(&c, &u).unwrap(), 1);
    }

    #[test]
    fn crossing_on_named_examples() {
        let whole = OpenArcSet::whole_circle();
        assert_eq!(
            index_crossing(&NValuedCircleMap::linear_map(1, 2), &whole).unwrap(),
            -1
        );
        assert_eq!(index_crossing(&identity_map(), &whole).unwrap(), 0);
        assert_eq!(index_schirmer(&identity_map(), &whole).unwrap(), 0);
        assert_eq!(
            index_crossing(&NValuedCircleMap::linear_map(3, 1), &whole).unwrap(),
            2
        );
    }

    #[test]
    fn empty_region_gives_zero() {
        let e = OpenArcSet::empty();
        for map in [
            NValuedCircleMap::linear_map(2, 1),
            NValuedCircleMap::constant_map(&[cp(1, 3)]).unwrap(),
        ] {
            assert_eq!(empty_region_index(&map), 0);
            assert_eq!(index_schirmer(&map, &e).unwrap(), 0);
            assert_eq!(index_crossing(&map, &e).unwrap(), 0);
        }
    }

    #[test]
    fn boundary_fixed_point_is_hard_error() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let bad = OpenArcSet::arc(rat_int(0), rat(1, 2)).unwrap();
        assert!(matches!(
            index_schirmer(&f, &bad),
            Err(IndexError::NotAdmissible(_))
        ));
        assert!(matches!(
            index_crossing(&f, &bad),
            Err(IndexError::NotAdmissible(_))
        ));
        assert!(AdmissiblePair::new(f, bad).is_err());
    }

    #[test]
    fn algorithms_agree_on_linear_grid() {
        let whole = OpenArcSet::whole_circle();
        for n in 1..=4usize {
            for d in -8i64..=8 {
                let f = NValuedCircleMap::linear_map(n, d);
                let s = index_schirmer(&f, &whole).unwrap();
                let c = index_crossing(&f, &whole).unwrap();
                assert_eq!(s, n as i64 - d, "schirmer wrong on ({n},{d})");
                assert_eq!(c, n as i64 - d, "crossing wrong on ({n},{d})");
            }
        }
    }

    #[test]
    fn additivity_on_arc_partition() {
        // fixed points of t -> 3t: 0 and 1/2, each of index -1
        let f = NValuedCircleMap::linear_map(1, 3);
        let u = OpenArcSet::parse("7/8+1/4,3/8+1/4").unwrap();
        let u1 = OpenArcSet::parse("7/8+1/4").unwrap();
        let u2 = OpenArcSet::parse("3/8+1/4").unwrap();
        for alg in [index_schirmer, index_crossing] {
            let total = alg(&f, &u).unwrap();
            assert_eq!(total, alg(&f, &u1).unwrap() + alg(&f, &u2).unwrap());
            assert_eq!(total, -2);
        }
    }

    #[test]
    fn excision_to_isolating_arcs() {
        let f = NValuedCircleMap::linear_map(2, 6);
        // all four fixed points: 0, 1/4, 1/2, 3/4
        let u = OpenArcSet::whole_circle();
        let v = OpenArcSet::parse("7/8+1/4,1/8+1/4,3/8+1/4,5/8+1/4").unwrap();
        for alg in [index_schirmer, index_crossing] {
            assert_eq!(alg(&f, &u).unwrap(), alg(&f, &v).unwrap());
        }
    }

    #[test]
    fn seam_crossing_region() {
        // fixed point at 0 enclosed by a seam-crossing arc
        let f = NValuedCircleMap::linear_map(1, 2);
        let u = OpenArcSet::parse("7/8+1/4").unwrap();
        assert_eq!(index_schirmer(&f, &u).unwrap(), -1);
        assert_eq!(index_crossing(&f, &u).unwrap(), -1);
        let v = OpenArcSet::parse("1/8+1/4").unwrap();
        assert_eq!(index_schirmer(&f, &v).unwrap(), 0);
        assert_eq!(index_crossing(&f, &v).unwrap(), 0);
    }

    #[test]
    fn corner_touch_has_index_zero() {
        // tent touching the diagonal at 1/2 from below
        let s = PLFunction::new(vec![
            (rat_int(0), rat(1, 4)),
            (rat(1, 2), rat(1, 2)),
            (rat_int(1), rat(1, 4)),
        ])
        .unwrap();
        let f = NValuedCircleMap::new(vec![s], Permutation::identity(1)).unwrap();
        assert!(f.is_valid());
        let r = fixed_points(&f);
        assert_eq!(r.points.len(), 1);
        let p = &r.points[0];
        assert_eq!(p.location, cp(1, 2));
        assert!(p.degenerate);
        assert_eq!(p.local_index, 0);
        let whole = OpenArcSet::whole_circle();
        assert_eq!(index_schirmer(&f, &whole).unwrap(), 0);
        assert_eq!(index_crossing(&f, &whole).unwrap(), 0);
    }
}
