//! Straight-line strand homotopies with exact validity certificates.
//!
//! A homotopy interpolates two maps with the same strand labeling, the same
//! monodromy, and the same closure offsets, linearly in the strand values on
//! a common breakpoint refinement. On each refinement cell the difference of
//! two interpolated strands is affine in the time parameter and affine in
//! the homotopy parameter, so its range over the cell is spanned by the four
//! corner values; checking that no integer lies in that span certifies
//! distinctness of every intermediate map. Acceptance is certified, not
//! sampled.

use thiserror::Error;

use crate::index::{index_crossing, index_schirmer, IndexError};
use crate::nmap::{NValuedCircleMap, PLFunction};
use crate::rational::{format_rational, integers_in, rat_int, Rational};
use crate::region::OpenArcSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("strand counts differ: {source} vs {target}")]
    ArityMismatch { source: usize, target: usize },
    #[error("monodromy or closure offsets differ between source and target")]
    MonodromyMismatch,
    #[error(
        "distinctness broken: strands {strand_a} and {strand_b} collide at \
         homotopy time {lambda} within [{from}, {to}]"
    )]
    DistinctnessBroken {
        strand_a: usize,
        strand_b: usize,
        lambda: String,
        from: String,
        to: String,
    },
}

/// A certified straight-line homotopy between two n-valued circle maps.
/// Every intermediate map [`at`](Self::at) is a valid n-valued map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandHomotopy {
    source: NValuedCircleMap,
    target: NValuedCircleMap,
}

impl StrandHomotopy {
    pub fn source(&self) -> &NValuedCircleMap {
        &self.source
    }

    pub fn target(&self) -> &NValuedCircleMap {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// The intermediate map at homotopy time `lambda` in `[0, 1]`, built on
    /// the common breakpoint refinement of each strand pair.
    pub fn at(&self, lambda: &Rational) -> NValuedCircleMap {
        assert!(lambda >= &rat_int(0) && lambda <= &rat_int(1));
        let strands = self
            .source
            .strands()
            .iter()
            .zip(self.target.strands())
            .map(|(s, t)| {
                let grid = s.merged_grid(t);
                let bps = grid
                    .into_iter()
                    .map(|u| {
                        let sv = s.eval(&u);
                        let tv = t.eval(&u);
                        let v = &sv + lambda * (tv - sv);
                        (u, v)
                    })
                    .collect();
                PLFunction::new(bps).expect("refined grid stays sorted")
            })
            .collect();
        NValuedCircleMap::new(strands, self.source.monodromy().clone())
            .expect("interpolation preserves structure")
    }
}

/// Builds the straight-line homotopy from `source` to `target`, certifying
/// that every intermediate map keeps the strands distinct. The two maps
/// must carry identical strand labelings: same arity, same monodromy, and
/// the same integer closure offsets (otherwise some intermediate map would
/// fail closure).
pub fn make_homotopy(
    source: NValuedCircleMap,
    target: NValuedCircleMap,
) -> Result<StrandHomotopy, HomotopyError> {
    if source.n() != target.n() {
        return Err(HomotopyError::ArityMismatch {
            source: source.n(),
            target: target.n(),
        });
    }
    if source.monodromy() != target.monodromy() {
        return Err(HomotopyError::MonodromyMismatch);
    }
    for i in 0..source.n() {
        if source.closure_offset(i) != target.closure_offset(i) {
            return Err(HomotopyError::MonodromyMismatch);
        }
    }
    let n = source.n();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut grid = source.strand(i).merged_grid(source.strand(j));
            for extra in target.strand(i).merged_grid(target.strand(j)) {
                grid.push(extra);
            }
            grid.sort();
            grid.dedup();
            let a = |u: &Rational| source.strand(i).eval(u) - source.strand(j).eval(u);
            let b = |u: &Rational| target.strand(i).eval(u) - target.strand(j).eval(u);
            for cell in grid.windows(2) {
                let (t0, t1) = (&cell[0], &cell[1]);
                let corners = [a(t0), a(t1), b(t0), b(t1)];
                let lo = corners.iter().min().unwrap();
                let hi = corners.iter().max().unwrap();
                if let Some(m) = integers_in(lo, hi).into_iter().next() {
                    let m = Rational::from_integer(m);
                    let lambda = collision_time(&corners, &m);
                    return Err(HomotopyError::DistinctnessBroken {
                        strand_a: i,
                        strand_b: j,
                        lambda: format_rational(&lambda),
                        from: format_rational(t0),
                        to: format_rational(t1),
                    });
                }
            }
        }
    }
    Ok(StrandHomotopy { source, target })
}

/// A homotopy time at which the strand difference meets the integer `m`,
/// given the four corner values `[a0, a1, b0, b1]` of the difference on a
/// cell. The source edge is time 0, the target edge time 1.
fn collision_time(corners: &[Rational; 4], m: &Rational) -> Rational {
    let [a0, a1, b0, b1] = corners;
    let within = |x: &Rational| x >= &rat_int(0) && x <= &rat_int(1);
    if (a0 <= m && m <= a1) || (a1 <= m && m <= a0) {
        return rat_int(0); // the source map itself collides
    }
    if (b0 <= m && m <= b1) || (b1 <= m && m <= b0) {
        return rat_int(1);
    }
    if b0 != a0 {
        let l = (m - a0) / (b0 - a0);
        if within(&l) {
            return l;
        }
    }
    let l = (m - a1) / (b1 - a1);
    debug_assert!(within(&l));
    l
}

/// Decides exactly whether no intermediate map has a fixed point on the
/// region boundary. On each strand the value at a boundary point is affine
/// in the homotopy time, so each potential crossing is a linear equation.
pub fn homotopy_is_admissible(h: &StrandHomotopy, region: &OpenArcSet) -> bool {
    let zero = rat_int(0);
    let one = rat_int(1);
    for bp in region.boundary_points() {
        let b = bp.coordinate();
        for (s, t) in h.source.strands().iter().zip(h.target.strands()) {
            let sv = s.eval(b);
            let tv = t.eval(b);
            let (lo, hi) = if sv <= tv {
                (&sv - b, &tv - b)
            } else {
                (&tv - b, &sv - b)
            };
            for m in integers_in(&lo, &hi) {
                let m = Rational::from_integer(m);
                if tv == sv {
                    // constant in time; integer in range means fixed for all times
                    return false;
                }
                let lambda = (b + &m - &sv) / (&tv - &sv);
                if lambda >= zero && lambda <= one {
                    return false;
                }
            }
        }
    }
    true
}

/// Index values of the two ends of a homotopy under both algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyInvarianceReport {
    pub source_schirmer: i64,
    pub source_crossing: i64,
    pub target_schirmer: i64,
    pub target_crossing: i64,
}

impl HomotopyInvarianceReport {
    pub fn pass(&self) -> bool {
        self.source_schirmer == self.target_schirmer
            && self.source_crossing == self.target_crossing
            && self.source_schirmer == self.source_crossing
    }
}

/// Checks the homotopy axiom on one admissible homotopy: the indices of the
/// two ends agree, under both algorithms.
pub fn verify_homotopy_invariance(
    h: &StrandHomotopy,
    region: &OpenArcSet,
) -> Result<HomotopyInvarianceReport, IndexError> {
    if !homotopy_is_admissible(h, region) {
        return Err(IndexError::NotAdmissible(
            "a fixed point of some intermediate map meets the region boundary".to_owned(),
        ));
    }
    Ok(HomotopyInvarianceReport {
        source_schirmer: index_schirmer(&h.source, region)?,
        source_crossing: index_crossing(&h.source, region)?,
        target_schirmer: index_schirmer(&h.target, region)?,
        target_crossing: index_crossing(&h.target, region)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmap::CirclePoint;
    use crate::rational::rat;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    #[test]
    fn shifted_linear_map_is_homotopic() {
        let f = NValuedCircleMap::linear_map(2, 1);
        let g = f.rotate_values(&rat(1, 8));
        let h = make_homotopy(f.clone(), g).unwrap();
        assert!(!h.is_identity());
        let mid = h.at(&rat(1, 2));
        assert!(mid.is_valid());
        assert_eq!(mid.strand(0).eval(&rat_int(0)), rat(1, 16));
        let rep = verify_homotopy_invariance(&h, &OpenArcSet::whole_circle()).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.source_schirmer, 1);
        assert_eq!(rep.target_crossing, 1);
    }

    #[test]
    fn swapping_constant_values_breaks_distinctness() {
        let src = NValuedCircleMap::constant_map(&[cp(0, 1), cp(1, 2)]).unwrap();
        let tgt = NValuedCircleMap::constant_map(&[cp(1, 2), cp(0, 1)]).unwrap();
        match make_homotopy(src, tgt) {
            Err(HomotopyError::DistinctnessBroken {
                strand_a,
                strand_b,
                lambda,
                ..
            }) => {
                assert_eq!((strand_a, strand_b), (0, 1));
                assert_eq!(lambda, "1/2");
            }
            other => panic!("expected a distinctness failure, got {other:?}"),
        }
    }

    #[test]
    fn identity_homotopy() {
        let f = NValuedCircleMap::linear_map(3, 2);
        let h = make_homotopy(f.clone(), f.clone()).unwrap();
        assert!(h.is_identity());
        let rep = verify_homotopy_invariance(&h, &OpenArcSet::whole_circle()).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.source_schirmer, 1);
    }

    #[test]
    fn closure_offset_mismatch_is_rejected() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let g = NValuedCircleMap::linear_map(1, 3);
        assert_eq!(
            make_homotopy(f, g).unwrap_err(),
            HomotopyError::MonodromyMismatch
        );
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let g = NValuedCircleMap::linear_map(2, 2);
        assert!(matches!(
            make_homotopy(f, g),
            Err(HomotopyError::ArityMismatch { source: 1, target: 2 })
        ));
    }

    #[test]
    fn small_rotation_family_is_admissible_away_from_fixed_points() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let g = f.rotate_values(&rat(1, 16));
        let h = make_homotopy(f, g).unwrap();
        // the fixed point stays near 0, never reaching the boundary 1/4, 3/4
        let region = OpenArcSet::arc(rat(1, 4), rat(1, 2)).unwrap();
        assert!(homotopy_is_admissible(&h, &region));
        assert!(homotopy_is_admissible(&h, &OpenArcSet::whole_circle()));
    }

    #[test]
    fn dragging_a_fixed_point_across_the_boundary_is_detected() {
        // fixed point of 2t + c/2 sits at -c/2 mod 1; it crosses 3/4 at c = 1/2
        let f = NValuedCircleMap::linear_map(1, 2);
        let g = f.rotate_values(&rat(1, 2));
        let h = make_homotopy(f, g).unwrap();
        let region = OpenArcSet::arc(rat(1, 4), rat(1, 2)).unwrap();
        assert!(!homotopy_is_admissible(&h, &region));
        assert!(verify_homotopy_invariance(&h, &region).is_err());
    }

    #[test]
    fn total_degree_constant_along_homotopies() {
        let f = NValuedCircleMap::linear_map(3, 2);
        let g = f.rotate_values(&rat(2, 5));
        let h = make_homotopy(f.clone(), g).unwrap();
        for lambda in [rat_int(0), rat(1, 3), rat(7, 9), rat_int(1)] {
            assert_eq!(h.at(&lambda).total_degree(), f.total_degree());
        }
    }

    #[test]
    fn perturbation_homotopy_preserves_whole_circle_index() {
        use crate::index::fix_finite_perturb;
        let id = NValuedCircleMap::new(
            vec![PLFunction::linear(rat_int(0), rat_int(0), rat_int(1), rat_int(1))],
            crate::nmap::Permutation::identity(1),
        )
        .unwrap();
        let (_, h) = fix_finite_perturb(&id);
        let rep = verify_homotopy_invariance(&h, &OpenArcSet::whole_circle()).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.source_schirmer, 0);
    }
}
