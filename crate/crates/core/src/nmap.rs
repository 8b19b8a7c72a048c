//! Piecewise-linear n-valued self-maps of the circle.
//!
//! The circle is `R/Z` with fundamental domain `[0, 1)`; the seam sits at 0.
//! An n-valued map is stored as `n` strand lifts over `[0, 1]` together with
//! a monodromy permutation matching strand endpoints at the seam. Over the
//! simply connected interval `[0, 1]` every n-valued map admits such
//! continuous selections, so this representation is lossless.
//!
//! Two semantic invariants make the strand data a genuine n-valued map:
//!
//! * distinctness: no two strand lifts ever differ by an integer, so the
//!   `n` circle values stay pairwise distinct;
//! * closure: each strand endpoint at `t = 1` lands, modulo 1, on the start
//!   of the strand selected by the monodromy.
//!
//! Both are decidable exactly on rational PL data and checked by
//! [`NValuedCircleMap::validate`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{
    format_rational, integers_in, is_integer, mod1, rat_int, to_i64, Rational,
};

/// A point of the circle `R/Z`, stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    /// Reduces an arbitrary rational modulo 1.
    pub fn new(r: Rational) -> Self {
        CirclePoint(mod1(&r))
    }

    /// The representative coordinate in `[0, 1)`.
    pub fn coordinate(&self) -> &Rational {
        &self.0
    }

    pub fn into_coordinate(self) -> Rational {
        self.0
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// A permutation of `{0, .., n-1}`, used for strand monodromy at the seam.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from its one-line notation, checking bijectivity.
    pub fn from_vec(v: Vec<usize>) -> Result<Self, StructureError> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n || seen[x] {
                return Err(StructureError::BadPermutation(v.clone()));
            }
            seen[x] = true;
        }
        Ok(Permutation(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A piecewise-linear function given by breakpoints with strictly
/// increasing parameters. Linear interpolation applies in between.
///
/// Strand lifts use the domain `[0, 1]`; branch continuations produced by
/// arc splitting live on other rational intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    breakpoints: Vec<(Rational, Rational)>,
}

/// Structural problems detected while building maps or PL functions.
#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error("a PL function needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoint parameters must be strictly increasing")]
    UnsortedBreakpoints,
    #[error("strand {0} is not defined over [0, 1]")]
    BadStrandDomain(usize),
    #[error("map must have at least one strand")]
    NoStrands,
    #[error("monodromy length {got} does not match strand count {want}")]
    MonodromyLength { got: usize, want: usize },
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
}

impl PLFunction {
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, StructureError> {
        if breakpoints.len() < 2 {
            return Err(StructureError::TooFewBreakpoints);
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(StructureError::UnsortedBreakpoints);
            }
        }
        Ok(PLFunction { breakpoints })
    }

    /// The segment from `(t0, v0)` to `(t1, v1)`.
    pub fn linear(t0: Rational, v0: Rational, t1: Rational, v1: Rational) -> Self {
        PLFunction::new(vec![(t0, v0), (t1, v1)]).expect("two increasing breakpoints")
    }

    /// Constant value `v` over `[0, 1]`.
    pub fn constant(v: Rational) -> Self {
        PLFunction::linear(rat_int(0), v.clone(), rat_int(1), v)
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn domain_start(&self) -> &Rational {
        &self.breakpoints.first().unwrap().0
    }

    pub fn domain_end(&self) -> &Rational {
        &self.breakpoints.last().unwrap().0
    }

    pub fn start_value(&self) -> &Rational {
        &self.breakpoints.first().unwrap().1
    }

    pub fn end_value(&self) -> &Rational {
        &self.breakpoints.last().unwrap().1
    }

    /// Consecutive breakpoint pairs.
    pub fn segments(&self) -> impl Iterator<Item = (&(Rational, Rational), &(Rational, Rational))> {
        self.breakpoints.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Evaluates by linear interpolation; `t` must lie in the domain.
    pub fn eval(&self, t: &Rational) -> Rational {
        assert!(
            t >= self.domain_start() && t <= self.domain_end(),
            "parameter {} outside domain [{}, {}]",
            t,
            self.domain_start(),
            self.domain_end()
        );
        for ((t0, v0), (t1, v1)) in self.segments() {
            if t <= t1 {
                let lambda = (t - t0) / (t1 - t0);
                return v0 + lambda * (v1 - v0);
            }
        }
        unreachable!("parameter inside domain but no segment found")
    }

    /// Restriction to `[a, b]` within the domain, with endpoints interpolated.
    pub fn restrict(&self, a: &Rational, b: &Rational) -> PLFunction {
        assert!(a < b, "restriction needs a < b");
        assert!(a >= self.domain_start() && b <= self.domain_end());
        let mut bps = vec![(a.clone(), self.eval(a))];
        for (t, v) in &self.breakpoints {
            if t > a && t < b {
                bps.push((t.clone(), v.clone()));
            }
        }
        bps.push((b.clone(), self.eval(b)));
        PLFunction { breakpoints: bps }
    }

    /// Adds `c` to every value.
    pub fn translate_values(&self, c: &Rational) -> PLFunction {
        PLFunction {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(t, v)| (t.clone(), v + c))
                .collect(),
        }
    }

    /// Shifts the parameter axis by `dt`.
    pub fn shift_domain(&self, dt: &Rational) -> PLFunction {
        PLFunction {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(t, v)| (t + dt, v.clone()))
                .collect(),
        }
    }

    /// Glues `other` onto the end of `self`; the shared breakpoint must agree.
    pub fn concat(&self, other: &PLFunction) -> PLFunction {
        assert_eq!(self.domain_end(), other.domain_start());
        assert_eq!(self.end_value(), other.start_value());
        let mut bps = self.breakpoints.clone();
        bps.extend(other.breakpoints.iter().skip(1).cloned());
        PLFunction { breakpoints: bps }
    }

    /// Breakpoint parameters of `self` and `other` merged into one grid.
    pub fn merged_grid(&self, other: &PLFunction) -> Vec<Rational> {
        let mut grid: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .map(|(t, _)| t.clone())
            .collect();
        grid.sort();
        grid.dedup();
        grid
    }

    /// Re-expresses the function on a refined grid (values unchanged).
    pub fn on_grid(&self, grid: &[Rational]) -> PLFunction {
        let bps = grid.iter().map(|t| (t.clone(), self.eval(t))).collect();
        PLFunction { breakpoints: bps }
    }
}

/// Outcome of [`NValuedCircleMap::validate`]: either clean or a list of
/// exact, localized violations. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A single invariant failure, naming the strands and parameter interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `s_a - s_b` meets the integer `offset` somewhere in `[from, to]`.
    Distinctness {
        strand_a: usize,
        strand_b: usize,
        from: Rational,
        to: Rational,
        offset: BigInt,
    },
    /// `s_i(1) - s_{sigma(i)}(0)` is not an integer.
    Closure { strand: usize, gap: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Distinctness {
                strand_a,
                strand_b,
                from,
                to,
                offset,
            } => write!(
                f,
                "distinctness broken: strands {} and {} differ by the integer {} somewhere in [{}, {}]",
                strand_a,
                strand_b,
                offset,
                format_rational(from),
                format_rational(to)
            ),
            Violation::Closure { strand, gap } => write!(
                f,
                "closure broken for strand {}: endpoint gap {} is not an integer",
                strand,
                format_rational(gap)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluateError {
    #[error("parameter {0} is outside the fundamental domain [0, 1)")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("map is not split: monodromy is not the identity permutation")]
    NotSplit,
    #[error("split_on_arc needs a proper arc, not the whole circle")]
    WholeCircle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantMapError {
    #[error("constant map needs at least one value")]
    Empty,
    #[error("duplicate value {0} in constant map")]
    Duplicate(CirclePoint),
}

/// An n-valued PL self-map of the circle: strand lifts plus seam monodromy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NValuedCircleMap {
    strands: Vec<PLFunction>,
    monodromy: Permutation,
}

impl NValuedCircleMap {
    /// Builds a map from strand lifts over `[0, 1]` and a monodromy
    /// permutation. Only structural well-formedness is enforced here; the
    /// semantic invariants are reported by [`validate`](Self::validate).
    pub fn new(strands: Vec<PLFunction>, monodromy: Permutation) -> Result<Self, StructureError> {
        if strands.is_empty() {
            return Err(StructureError::NoStrands);
        }
        for (i, s) in strands.iter().enumerate() {
            if !s.domain_start().is_zero() || !s.domain_end().is_one() {
                return Err(StructureError::BadStrandDomain(i));
            }
        }
        if monodromy.len() != strands.len() {
            return Err(StructureError::MonodromyLength {
                got: monodromy.len(),
                want: strands.len(),
            });
        }
        Ok(NValuedCircleMap { strands, monodromy })
    }

    pub fn n(&self) -> usize {
        self.strands.len()
    }

    pub fn strands(&self) -> &[PLFunction] {
        &self.strands
    }

    pub fn strand(&self, i: usize) -> &PLFunction {
        &self.strands[i]
    }

    pub fn monodromy(&self) -> &Permutation {
        &self.monodromy
    }

    /// Checks distinctness and closure exactly, segment by segment.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let grid = self.strands[i].merged_grid(&self.strands[j]);
                let a = self.strands[i].on_grid(&grid);
                let b = self.strands[j].on_grid(&grid);
                for (pa, pb) in a.segments().zip(b.segments()) {
                    let d0 = &pa.0 .1 - &pb.0 .1;
                    let d1 = &pa.1 .1 - &pb.1 .1;
                    let (lo, hi) = if d0 <= d1 {
                        (d0, d1)
                    } else {
                        (d1, d0)
                    };
                    if let Some(m) = integers_in(&lo, &hi).into_iter().next() {
                        violations.push(Violation::Distinctness {
                            strand_a: i,
                            strand_b: j,
                            from: pa.0 .0.clone(),
                            to: pa.1 .0.clone(),
                            offset: m,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let gap = self.strands[i].end_value()
                - self.strands[self.monodromy.apply(i)].start_value();
            if !is_integer(&gap) {
                violations.push(Violation::Closure { strand: i, gap });
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The integer `s_i(1) - s_{sigma(i)}(0)` for strand `i` of a valid map.
    pub fn closure_offset(&self, i: usize) -> BigInt {
        let gap = self.strands[i].end_value()
            - self.strands[self.monodromy.apply(i)].start_value();
        assert!(is_integer(&gap), "closure offset of an invalid map");
        gap.to_integer()
    }

    /// The n circle values at `t`, sorted ascending. `t` must be in `[0, 1)`.
    pub fn evaluate(&self, t: &Rational) -> Result<Vec<CirclePoint>, EvaluateError> {
        if t < &rat_int(0) || t >= &rat_int(1) {
            return Err(EvaluateError::OutOfRange(format_rational(t)));
        }
        let mut values: Vec<CirclePoint> = self
            .strands
            .iter()
            .map(|s| CirclePoint::new(s.eval(t)))
            .collect();
        values.sort();
        Ok(values)
    }

    /// Total winding gain over the fundamental domain; an integer for valid
    /// maps and a homotopy invariant.
    pub fn total_degree(&self) -> i64 {
        let sum: Rational = self
            .strands
            .iter()
            .map(|s| s.end_value() - s.start_value())
            .sum();
        to_i64(&sum)
    }

    /// True iff the map admits n global continuous selections; on the
    /// circle this is exactly trivial monodromy of the strand lift.
    pub fn is_split(&self) -> bool {
        self.monodromy.is_identity()
    }

    /// Decomposes a split map into n single-valued circle maps.
    pub fn split(&self) -> Result<Vec<NValuedCircleMap>, SplitError> {
        if !self.is_split() {
            return Err(SplitError::NotSplit);
        }
        Ok(self
            .strands
            .iter()
            .map(|s| {
                NValuedCircleMap::new(vec![s.clone()], Permutation::identity(1))
                    .expect("strand is a valid 1-valued map")
            })
            .collect())
    }

    /// Continuous selections over the interval `[start, start + length]`,
    /// continued across the seam via the monodromy. `length` may be at most
    /// 1 (the punctured circle); larger windows are not simply connected.
    ///
    /// Branch `i` starts on strand `i` at parameter `start`.
    pub fn branches_over(&self, start: &Rational, length: &Rational) -> Vec<PLFunction> {
        assert!(start >= &rat_int(0) && start < &rat_int(1));
        assert!(length > &rat_int(0) && length <= &rat_int(1));
        let end = start + length;
        let one = rat_int(1);
        (0..self.n())
            .map(|i| {
                if end <= one {
                    self.strands[i].restrict(start, &end)
                } else {
                    let j = self.monodromy.apply(i);
                    let m = Rational::from_integer(self.closure_offset(i));
                    let tail = self.strands[j]
                        .restrict(&rat_int(0), &(&end - &one))
                        .shift_domain(&one)
                        .translate_values(&m);
                    // end > 1 forces start > 0, so the head is nonempty
                    self.strands[i].restrict(start, &one).concat(&tail)
                }
            })
            .collect()
    }

    /// Splits the map over a proper open arc `(start, start + length)` with
    /// `length < 1`. Always succeeds for valid maps: a proper arc is simply
    /// connected. The returned selections are closed-interval PL functions
    /// covering the arc's closure.
    pub fn split_on_arc(
        &self,
        start: &Rational,
        length: &Rational,
    ) -> Result<Vec<PLFunction>, SplitError> {
        if length >= &rat_int(1) {
            return Err(SplitError::WholeCircle);
        }
        Ok(self.branches_over(&mod1(start), length))
    }

    /// The constant n-valued map with the given pairwise distinct values.
    pub fn constant_map(values: &[CirclePoint]) -> Result<Self, ConstantMapError> {
        if values.is_empty() {
            return Err(ConstantMapError::Empty);
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(ConstantMapError::Duplicate(v.clone()));
            }
        }
        let strands = values
            .iter()
            .map(|v| PLFunction::constant(v.coordinate().clone()))
            .collect();
        Ok(NValuedCircleMap {
            strands,
            monodromy: Permutation::identity(values.len()),
        })
    }

    /// The standard n-valued map of total degree `d` with strands
    /// `t -> (d t + k) / n` and monodromy `k -> k + d (mod n)`.
    pub fn linear_map(n: usize, d: i64) -> Self {
        assert!(n >= 1);
        let nn = rat_int(n as i64);
        let strands = (0..n)
            .map(|k| {
                let k = rat_int(k as i64);
                PLFunction::linear(
                    rat_int(0),
                    &k / &nn,
                    rat_int(1),
                    (rat_int(d) + &k) / &nn,
                )
            })
            .collect();
        let sigma = (0..n)
            .map(|k| (k as i64 + d).rem_euclid(n as i64) as usize)
            .collect();
        NValuedCircleMap {
            strands,
            monodromy: Permutation::from_vec(sigma).expect("cyclic shift is a permutation"),
        }
    }

    /// Post-composes with the rotation `x -> x + c`: every strand value is
    /// shifted by `c`. Monodromy and total degree are unchanged.
    pub fn rotate_values(&self, c: &Rational) -> Self {
        NValuedCircleMap {
            strands: self
                .strands
                .iter()
                .map(|s| s.translate_values(c))
                .collect(),
            monodromy: self.monodromy.clone(),
        }
    }

    /// Reorders strand labels by `relabel` (new strand `i` is old strand
    /// `relabel(i)`), conjugating the monodromy to preserve behavior.
    pub fn relabel_strands(&self, relabel: &Permutation) -> Self {
        assert_eq!(relabel.len(), self.n());
        let inv = relabel.inverse();
        let strands = (0..self.n())
            .map(|i| self.strands[relabel.apply(i)].clone())
            .collect();
        let sigma = (0..self.n())
            .map(|i| inv.apply(self.monodromy.apply(relabel.apply(i))))
            .collect();
        NValuedCircleMap {
            strands,
            monodromy: Permutation::from_vec(sigma).expect("conjugate of a permutation"),
        }
    }

    /// Recovers the seam matching from strand endpoint values alone, without
    /// consulting the stored monodromy: strand `i` is matched to the unique
    /// strand whose start value equals `s_i(1)` mod 1. Returns `None` when
    /// the endpoint sets do not match up bijectively.
    pub fn derive_monodromy(&self) -> Option<Permutation> {
        let n = self.n();
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for i in 0..n {
            let target = mod1(self.strands[i].end_value());
            let mut found = None;
            for (j, s) in self.strands.iter().enumerate() {
                if !used[j] && mod1(s.start_value()) == target {
                    found = Some(j);
                    break;
                }
            }
            let j = found?;
            sigma[i] = j;
            used[j] = true;
        }
        Permutation::from_vec(sigma).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    #[test]
    fn linear_map_2_1_is_valid_unsplit() {
        let f = NValuedCircleMap::linear_map(2, 1);
        assert!(f.validate().is_ok());
        assert!(!f.is_split());
        assert_eq!(f.total_degree(), 1);
        // strand difference is constantly -1/2, never an integer
        let d = f.strand(0).eval(&rat(1, 3)) - f.strand(1).eval(&rat(1, 3));
        assert_eq!(d, rat(-1, 2));
    }

    #[test]
    fn integer_strand_difference_is_reported() {
        // strands t/2 and t/2 + 1 coincide on the circle for every t
        let s0 = PLFunction::linear(rat_int(0), rat_int(0), rat_int(1), rat(1, 2));
        let s1 = PLFunction::linear(rat_int(0), rat_int(1), rat_int(1), rat(3, 2));
        let f = NValuedCircleMap::new(vec![s0, s1], Permutation::identity(2)).unwrap();
        let report = f.validate();
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Distinctness { strand_a: 0, strand_b: 1, offset, .. }
            if *offset == BigInt::from(-1)
        )));
    }

    #[test]
    fn identity_monodromy_on_linear_3_1_breaks_closure() {
        let f = NValuedCircleMap::linear_map(3, 1);
        let broken =
            NValuedCircleMap::new(f.strands().to_vec(), Permutation::identity(3)).unwrap();
        let report = broken.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Closure { strand: 0, gap } if *gap == rat(1, 3))));
    }

    #[test]
    fn evaluate_linear_maps() {
        let f = NValuedCircleMap::linear_map(2, 1);
        assert_eq!(f.evaluate(&rat_int(0)).unwrap(), vec![cp(0, 1), cp(1, 2)]);

        let c = NValuedCircleMap::constant_map(&[cp(1, 4), cp(3, 4)]).unwrap();
        assert_eq!(c.evaluate(&rat(2, 7)).unwrap(), vec![cp(1, 4), cp(3, 4)]);

        let doubling = NValuedCircleMap::linear_map(1, 2);
        assert_eq!(doubling.evaluate(&rat(3, 4)).unwrap(), vec![cp(1, 2)]);

        assert!(doubling.evaluate(&rat_int(1)).is_err());
        assert!(doubling.evaluate(&rat(-1, 2)).is_err());
    }

    #[test]
    fn evaluate_has_cardinality_n() {
        for n in 1..=4 {
            for d in -6..=6 {
                let f = NValuedCircleMap::linear_map(n, d);
                for q in [rat_int(0), rat(1, 7), rat(3, 5), rat(63, 64)] {
                    let vals = f.evaluate(&q).unwrap();
                    assert_eq!(vals.len(), n);
                    for w in vals.windows(2) {
                        assert!(w[0] < w[1], "values collide for n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn total_degree_of_linear_grid() {
        for n in 1..=6 {
            for d in -10..=10 {
                let f = NValuedCircleMap::linear_map(n, d);
                assert!(f.validate().is_ok(), "linear_map({n},{d}) invalid");
                assert_eq!(f.total_degree(), d);
            }
        }
        let c = NValuedCircleMap::constant_map(&[cp(0, 1), cp(1, 3), cp(2, 3)]).unwrap();
        assert_eq!(c.total_degree(), 0);
    }

    #[test]
    fn split_detection() {
        assert!(!NValuedCircleMap::linear_map(2, 1).is_split());
        assert!(NValuedCircleMap::linear_map(2, 6).is_split());
        assert!(NValuedCircleMap::constant_map(&[cp(1, 4), cp(3, 4)])
            .unwrap()
            .is_split());
    }

    #[test]
    fn split_of_linear_2_6() {
        let f = NValuedCircleMap::linear_map(2, 6);
        let parts = f.split().unwrap();
        assert_eq!(parts.len(), 2);
        // strands t -> 3t and t -> 3t + 1/2
        assert_eq!(parts[0].strand(0).eval(&rat(1, 3)), rat_int(1));
        assert_eq!(parts[1].strand(0).eval(&rat(1, 3)), rat(3, 2));
        for t in [rat_int(0), rat(1, 5), rat(7, 9)] {
            let mut union: Vec<CirclePoint> = parts
                .iter()
                .map(|p| p.evaluate(&t).unwrap().remove(0))
                .collect();
            union.sort();
            assert_eq!(union, f.evaluate(&t).unwrap());
        }
        assert_eq!(
            NValuedCircleMap::linear_map(2, 1).split().unwrap_err(),
            SplitError::NotSplit
        );
    }

    #[test]
    fn split_on_arc_crossing_seam() {
        let f = NValuedCircleMap::linear_map(2, 1);
        // arc (3/4, 5/4) crosses the seam
        let branches = f.split_on_arc(&rat(3, 4), &rat(1, 2)).unwrap();
        assert_eq!(branches.len(), 2);
        // branch 1 follows strand 1 to s_1(1) = 1, then continues on strand
        // sigma(1) = 0 lifted by 1
        let b1 = &branches[1];
        assert_eq!(b1.eval(&rat_int(1)), rat_int(1));
        assert_eq!(b1.eval(&rat(9, 8)), rat(17, 16)); // s_0(1/8) + 1 = 1/16 + 1
        // branches stay continuous selections of the map
        for t in [rat(4, 5), rat_int(1), rat(11, 10)] {
            let mut got: Vec<CirclePoint> = branches
                .iter()
                .map(|b| CirclePoint::new(b.eval(&t)))
                .collect();
            got.sort();
            assert_eq!(got, f.evaluate(&mod1(&t)).unwrap());
        }
    }

    #[test]
    fn split_on_arc_within_domain() {
        let f = NValuedCircleMap::linear_map(3, 1);
        let branches = f.split_on_arc(&rat_int(0), &rat(1, 2)).unwrap();
        for (k, b) in branches.iter().enumerate() {
            // s_k(t) = (t + k)/3: at t=1/3 value = (1/3 + k)/3
            let t = rat(1, 3);
            assert_eq!(b.eval(&t), (rat(1, 3) + rat_int(k as i64)) / rat_int(3));
        }
        assert!(f.split_on_arc(&rat_int(0), &rat_int(1)).is_err());
    }

    #[test]
    fn constant_map_rejects_duplicates() {
        assert!(matches!(
            NValuedCircleMap::constant_map(&[cp(1, 4), cp(5, 4)]),
            Err(ConstantMapError::Duplicate(_))
        ));
        assert!(NValuedCircleMap::constant_map(&[]).is_err());
        let single = NValuedCircleMap::constant_map(&[cp(0, 1)]).unwrap();
        assert!(single.validate().is_ok());
        assert_eq!(single.total_degree(), 0);
    }

    #[test]
    fn linear_map_monodromy() {
        let f = NValuedCircleMap::linear_map(2, 1);
        assert_eq!(f.monodromy().as_slice(), &[1, 0]);
        let g = NValuedCircleMap::linear_map(4, -3);
        assert!(g.validate().is_ok());
        assert_eq!(g.monodromy().as_slice(), &[1, 2, 3, 0]);
        assert_eq!(g.total_degree(), -3);
    }

    #[test]
    fn rotation_preserves_structure() {
        let f = NValuedCircleMap::linear_map(3, 2);
        let g = f.rotate_values(&rat(5, 7));
        assert!(g.validate().is_ok());
        assert_eq!(g.n(), 3);
        assert_eq!(g.total_degree(), f.total_degree());
        assert_eq!(g.monodromy(), f.monodromy());
    }

    #[test]
    fn relabeling_conjugates_monodromy() {
        let f = NValuedCircleMap::linear_map(3, 1);
        let relabel = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        let g = f.relabel_strands(&relabel);
        assert!(g.validate().is_ok());
        assert_eq!(g.total_degree(), f.total_degree());
        for t in [rat_int(0), rat(1, 2), rat(5, 8)] {
            assert_eq!(g.evaluate(&t).unwrap(), f.evaluate(&t).unwrap());
        }
        assert_eq!(g.derive_monodromy().unwrap(), *g.monodromy());
    }

    #[test]
    fn derived_monodromy_matches_stored() {
        for n in 1..=4 {
            for d in -5..=5 {
                let f = NValuedCircleMap::linear_map(n, d);
                assert_eq!(f.derive_monodromy().unwrap(), *f.monodromy());
            }
        }
    }
}
