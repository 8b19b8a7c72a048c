//! Orientation-preserving PL self-homeomorphisms of the circle and
//! conjugation of maps by them, for the chart-invariance suite.
//!
//! A homeomorphism is stored as a seam-fixing increasing PL bijection of
//! `[0, 1]` followed by a rotation; every orientation-preserving PL circle
//! homeomorphism with rational breakpoints factors this way.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::nmap::{CirclePoint, NValuedCircleMap, PLFunction, Permutation};
use crate::rational::{integers_in, mod1, rat_int, Rational};
use crate::region::{Arc, OpenArcSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("seam-fixing part must be defined on [0, 1]")]
    BadDomain,
    #[error("seam-fixing part must fix 0 and 1")]
    EndpointsNotFixed,
    #[error("homeomorphism must be strictly increasing")]
    NotIncreasing,
}

/// An orientation-preserving PL circle homeomorphism with rational
/// breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleHomeo {
    seam_fixing: PLFunction,
    rotation: Rational,
}

impl CircleHomeo {
    pub fn identity() -> Self {
        CircleHomeo::rotation(&rat_int(0))
    }

    /// The rigid rotation `x -> x + c`.
    pub fn rotation(c: &Rational) -> Self {
        CircleHomeo {
            seam_fixing: PLFunction::linear(rat_int(0), rat_int(0), rat_int(1), rat_int(1)),
            rotation: mod1(c),
        }
    }

    /// A general homeomorphism: a seam-fixing increasing bijection of
    /// `[0, 1]` post-composed with a rotation.
    pub fn new(seam_fixing: PLFunction, rotation: &Rational) -> Result<Self, ChartError> {
        if !seam_fixing.domain_start().is_zero() || !seam_fixing.domain_end().is_one() {
            return Err(ChartError::BadDomain);
        }
        if !seam_fixing.start_value().is_zero() || !seam_fixing.end_value().is_one() {
            return Err(ChartError::EndpointsNotFixed);
        }
        for (a, b) in seam_fixing
            .breakpoints()
            .iter()
            .zip(seam_fixing.breakpoints().iter().skip(1))
        {
            if a.1 >= b.1 {
                return Err(ChartError::NotIncreasing);
            }
        }
        Ok(CircleHomeo {
            seam_fixing,
            rotation: mod1(rotation),
        })
    }

    /// The monotone lift to the real line, satisfying
    /// `lift(x + 1) = lift(x) + 1`.
    pub fn apply_lift(&self, x: &Rational) -> Rational {
        let fl = x.floor();
        self.seam_fixing.eval(&(x - &fl)) + fl + &self.rotation
    }

    pub fn apply(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(self.apply_lift(p.coordinate()))
    }

    /// Image of a region: each arc maps to the arc between the images of
    /// its endpoints.
    pub fn apply_region(&self, region: &OpenArcSet) -> OpenArcSet {
        if region.is_empty() || region.is_whole_circle() {
            return region.clone();
        }
        let arcs = region
            .arcs()
            .iter()
            .map(|a| {
                let start = self.apply_lift(a.start());
                let len = self.apply_lift(&a.end_lift()) - &start;
                Arc::new(start, len).expect("homeomorphic image of an arc is an arc")
            })
            .collect();
        OpenArcSet::from_arcs(arcs).expect("homeomorphism preserves disjointness")
    }

    /// The conjugate map `phi . f . phi^{-1}`, computed exactly on strand
    /// data. Fixed points and indices transport along `phi`.
    pub fn conjugate_map(&self, map: &NValuedCircleMap) -> NValuedCircleMap {
        let seamed = conjugate_seam_fixing(&self.seam_fixing, map);
        conjugate_rotation(&self.rotation, &seamed)
    }
}

fn is_identity_pl(phi: &PLFunction) -> bool {
    phi.breakpoints().iter().all(|(t, v)| t == v)
}

/// Conjugation by a seam-fixing homeomorphism: each strand becomes
/// `lift(phi) . s . phi^{-1}`, evaluated on the parameter grid where all
/// three compositions are simultaneously affine.
fn conjugate_seam_fixing(phi: &PLFunction, map: &NValuedCircleMap) -> NValuedCircleMap {
    if is_identity_pl(phi) {
        return map.clone();
    }
    let phi_breaks: Vec<Rational> = phi.breakpoints().iter().map(|(t, _)| t.clone()).collect();
    let lift = |x: &Rational| -> Rational {
        let fl = x.floor();
        phi.eval(&(x - &fl)) + fl
    };
    let strands = map
        .strands()
        .iter()
        .map(|s| {
            let mut cuts: Vec<Rational> = s
                .breakpoints()
                .iter()
                .map(|(t, _)| t.clone())
                .chain(phi_breaks.iter().cloned())
                .collect();
            // cut wherever the strand value meets a breakpoint of the
            // periodic extension of phi
            for ((t0, v0), (t1, v1)) in s.segments() {
                if v0 == v1 {
                    continue;
                }
                let (lo, hi) = if v0 <= v1 { (v0, v1) } else { (v1, v0) };
                for beta in &phi_breaks {
                    for m in integers_in(&(lo - beta), &(hi - beta)) {
                        let target = beta + Rational::from_integer(m);
                        let u = t0 + (&target - v0) / (v1 - v0) * (t1 - t0);
                        cuts.push(u);
                    }
                }
            }
            cuts.retain(|u| u >= &rat_int(0) && u <= &rat_int(1));
            cuts.sort();
            cuts.dedup();
            let bps = cuts
                .into_iter()
                .map(|u| {
                    let t_new = phi.eval(&u);
                    let v_new = lift(&s.eval(&u));
                    (t_new, v_new)
                })
                .collect();
            PLFunction::new(bps).expect("conjugated breakpoints stay sorted")
        })
        .collect();
    let out = NValuedCircleMap::new(strands, map.monodromy().clone())
        .expect("conjugation preserves structure");
    debug_assert!(out.is_valid());
    out
}

/// Conjugation by a rotation: `(r_c . f . r_{-c})(x) = f(x - c) + c`. The
/// strand data is rebased across the seam and the monodromy rederived from
/// endpoint values.
fn conjugate_rotation(c: &Rational, map: &NValuedCircleMap) -> NValuedCircleMap {
    let c = mod1(c);
    if c.is_zero() {
        return map.clone();
    }
    let start = rat_int(1) - &c;
    let shift = -start.clone();
    let strands: Vec<PLFunction> = map
        .branches_over(&start, &rat_int(1))
        .iter()
        .map(|b| b.shift_domain(&shift).translate_values(&c))
        .collect();
    let provisional = NValuedCircleMap::new(strands, Permutation::identity(map.n()))
        .expect("rebased strands stay structurally sound");
    let sigma = provisional
        .derive_monodromy()
        .expect("rotated map closes up");
    let out = NValuedCircleMap::new(provisional.strands().to_vec(), sigma)
        .expect("closing permutation fits");
    debug_assert!(out.is_valid());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{fixed_points, index_crossing, index_schirmer};
    use crate::rational::rat;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    fn two_segment_homeo() -> CircleHomeo {
        let phi = PLFunction::new(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 3), rat(1, 2)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap();
        CircleHomeo::new(phi, &rat_int(0)).unwrap()
    }

    #[test]
    fn lifts_are_periodic() {
        let h = two_segment_homeo();
        for x in [rat(1, 4), rat(-3, 5), rat(7, 3)] {
            assert_eq!(
                h.apply_lift(&(&x + rat_int(1))),
                h.apply_lift(&x) + rat_int(1)
            );
        }
        assert_eq!(h.apply_lift(&rat(1, 4)), rat(3, 8));
    }

    #[test]
    fn conjugation_transports_evaluation() {
        let maps = [
            NValuedCircleMap::linear_map(2, 1),
            NValuedCircleMap::linear_map(3, -2),
            NValuedCircleMap::constant_map(&[cp(1, 8), cp(5, 8)]).unwrap(),
        ];
        let homeos = [
            CircleHomeo::rotation(&rat(1, 7)),
            two_segment_homeo(),
            CircleHomeo::new(
                PLFunction::new(vec![
                    (rat_int(0), rat_int(0)),
                    (rat(1, 4), rat(1, 2)),
                    (rat(3, 4), rat(5, 8)),
                    (rat_int(1), rat_int(1)),
                ])
                .unwrap(),
                &rat(2, 5),
            )
            .unwrap(),
        ];
        for map in &maps {
            for h in &homeos {
                let conj = h.conjugate_map(map);
                assert!(conj.is_valid());
                for x in [rat_int(0), rat(1, 5), rat(9, 11)] {
                    let lhs = conj
                        .evaluate(h.apply(&CirclePoint::new(x.clone())).coordinate())
                        .unwrap();
                    let mut rhs: Vec<CirclePoint> = map
                        .evaluate(&x)
                        .unwrap()
                        .iter()
                        .map(|p| h.apply(p))
                        .collect();
                    rhs.sort();
                    assert_eq!(lhs, rhs, "conjugation broke evaluation");
                }
            }
        }
    }

    #[test]
    fn rotation_conjugation_moves_fixed_points() {
        let f = NValuedCircleMap::linear_map(1, 2);
        let h = CircleHomeo::rotation(&rat(1, 4));
        let conj = h.conjugate_map(&f);
        let r = fixed_points(&conj);
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].location, cp(1, 4));
        assert_eq!(r.points[0].slope, rat_int(2));
    }

    #[test]
    fn index_is_chart_invariant_on_examples() {
        let whole = OpenArcSet::whole_circle();
        let f = NValuedCircleMap::linear_map(2, 1);
        let h = CircleHomeo::rotation(&rat(1, 7));
        let conj = h.conjugate_map(&f);
        assert_eq!(index_schirmer(&conj, &whole).unwrap(), 1);
        assert_eq!(index_crossing(&conj, &whole).unwrap(), 1);

        // constant map through a two-segment chart, arc around one value
        let c = NValuedCircleMap::constant_map(&[cp(1, 4), cp(3, 4)]).unwrap();
        let u = OpenArcSet::arc(rat(1, 5), rat(1, 10)).unwrap();
        let h = two_segment_homeo();
        let conj = h.conjugate_map(&c);
        let hu = h.apply_region(&u);
        assert_eq!(index_schirmer(&conj, &hu).unwrap(), 1);
        assert_eq!(index_crossing(&conj, &hu).unwrap(), 1);
    }

    #[test]
    fn region_image_preserves_membership() {
        let h = two_segment_homeo();
        let u = OpenArcSet::parse("1/8+1/4,3/4+1/8").unwrap();
        let hu = h.apply_region(&u);
        for p in [cp(1, 6), cp(25, 32), cp(1, 2), cp(0, 1)] {
            assert_eq!(u.contains(&p), hu.contains(&h.apply(&p)));
        }
    }

    #[test]
    fn homeo_validation() {
        let not_fixing = PLFunction::linear(rat_int(0), rat(1, 4), rat_int(1), rat(5, 4));
        assert_eq!(
            CircleHomeo::new(not_fixing, &rat_int(0)).unwrap_err(),
            ChartError::EndpointsNotFixed
        );
        let not_increasing = PLFunction::new(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(3, 4)),
            (rat(3, 4), rat(1, 2)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap();
        assert_eq!(
            CircleHomeo::new(not_increasing, &rat_int(0)).unwrap_err(),
            ChartError::NotIncreasing
        );
    }
}
