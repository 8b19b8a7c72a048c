//! Open subsets of the circle: finite disjoint unions of open arcs.
//!
//! Regions are the `U` of admissible pairs. The empty set and the whole
//! circle get their own representations since both have empty boundary but
//! very different indices.

use std::fmt;

use thiserror::Error;

use crate::nmap::CirclePoint;
use crate::rational::{format_rational, mod1, parse_rational, rat_int, Rational};

/// An open circular arc `(start, start + length)` with `0 < length <= 1`.
/// A length-1 arc is the circle punctured at its start point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    start: Rational,
    length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("arc length {0} must lie in (0, 1]")]
    BadLength(String),
    #[error("arcs overlap near start {0}")]
    Overlap(String),
}

impl Arc {
    /// Builds an arc; the start is reduced mod 1 into `[0, 1)`.
    pub fn new(start: Rational, length: Rational) -> Result<Self, RegionError> {
        if length <= rat_int(0) || length > rat_int(1) {
            return Err(RegionError::BadLength(format_rational(&length)));
        }
        Ok(Arc {
            start: mod1(&start),
            length,
        })
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    /// The arc's end in lifted coordinates, `start + length` in `(start, start + 1]`.
    pub fn end_lift(&self) -> Rational {
        &self.start + &self.length
    }

    /// The two boundary circle points (equal for a length-1 arc).
    pub fn endpoints(&self) -> (CirclePoint, CirclePoint) {
        (
            CirclePoint::new(self.start.clone()),
            CirclePoint::new(self.end_lift()),
        )
    }

    /// Open-arc membership.
    pub fn contains(&self, p: &CirclePoint) -> bool {
        let rel = mod1(&(p.coordinate() - &self.start));
        rel > rat_int(0) && rel < self.length
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}",
            format_rational(&self.start),
            format_rational(&self.length)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum RegionKind {
    Empty,
    WholeCircle,
    Union(Vec<Arc>),
}

/// A finite union of pairwise disjoint open arcs, the whole circle, or the
/// empty set. Arcs are kept sorted by start point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenArcSet {
    kind: RegionKind,
}

impl OpenArcSet {
    pub fn empty() -> Self {
        OpenArcSet {
            kind: RegionKind::Empty,
        }
    }

    pub fn whole_circle() -> Self {
        OpenArcSet {
            kind: RegionKind::WholeCircle,
        }
    }

    /// A single-arc region.
    pub fn arc(start: Rational, length: Rational) -> Result<Self, RegionError> {
        OpenArcSet::from_arcs(vec![Arc::new(start, length)?])
    }

    /// A union of arcs; sorts them canonically and checks pairwise
    /// disjointness on the circle. An empty list yields the empty region.
    pub fn from_arcs(mut arcs: Vec<Arc>) -> Result<Self, RegionError> {
        if arcs.is_empty() {
            return Ok(OpenArcSet::empty());
        }
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        for w in arcs.windows(2) {
            if w[0].end_lift() > w[1].start {
                return Err(RegionError::Overlap(format_rational(&w[1].start)));
            }
        }
        // the last arc may wrap past 1; it must not reach into the first
        let last = arcs.last().unwrap();
        let first = arcs.first().unwrap();
        if arcs.len() > 1 && last.end_lift() > &first.start + rat_int(1) {
            return Err(RegionError::Overlap(format_rational(&first.start)));
        }
        Ok(OpenArcSet {
            kind: RegionKind::Union(arcs),
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, RegionKind::Empty)
    }

    pub fn is_whole_circle(&self) -> bool {
        matches!(self.kind, RegionKind::WholeCircle)
    }

    /// The component arcs; empty for both the empty region and the whole
    /// circle (which has no boundary).
    pub fn arcs(&self) -> &[Arc] {
        match &self.kind {
            RegionKind::Union(arcs) => arcs,
            _ => &[],
        }
    }

    /// The topological boundary, a finite set of circle points (deduplicated;
    /// empty for the empty set and the whole circle).
    pub fn boundary_points(&self) -> Vec<CirclePoint> {
        let mut pts: Vec<CirclePoint> = self
            .arcs()
            .iter()
            .flat_map(|a| {
                let (s, e) = a.endpoints();
                [s, e]
            })
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn contains(&self, p: &CirclePoint) -> bool {
        match &self.kind {
            RegionKind::Empty => false,
            RegionKind::WholeCircle => true,
            RegionKind::Union(arcs) => arcs.iter().any(|a| a.contains(p)),
        }
    }

    /// The component arc containing `p`, if any.
    pub fn component_containing(&self, p: &CirclePoint) -> Option<&Arc> {
        self.arcs().iter().find(|a| a.contains(p))
    }

    /// Image under the rotation `x -> x + c`.
    pub fn rotate(&self, c: &Rational) -> Self {
        match &self.kind {
            RegionKind::Union(arcs) => OpenArcSet::from_arcs(
                arcs.iter()
                    .map(|a| Arc::new(&a.start + c, a.length.clone()).unwrap())
                    .collect(),
            )
            .expect("rotation preserves disjointness"),
            other => OpenArcSet {
                kind: other.clone(),
            },
        }
    }

    /// Parses `"all"`, `"empty"`, or a comma list of `start+length` pairs
    /// with rational entries, e.g. `"1/4+1/2,7/8+1/16"`.
    pub fn parse(s: &str) -> Result<Self, RegionParseError> {
        let s = s.trim();
        match s {
            "all" => Ok(OpenArcSet::whole_circle()),
            "empty" => Ok(OpenArcSet::empty()),
            _ => {
                let mut arcs = Vec::new();
                for part in s.split(',') {
                    let part = part.trim();
                    let (start, len) = part
                        .split_once('+')
                        .ok_or_else(|| RegionParseError::BadArc(part.to_owned()))?;
                    let start = parse_rational(start)
                        .map_err(|e| RegionParseError::BadRational(part.to_owned(), e.to_string()))?;
                    let len = parse_rational(len)
                        .map_err(|e| RegionParseError::BadRational(part.to_owned(), e.to_string()))?;
                    arcs.push(Arc::new(start, len).map_err(RegionParseError::Region)?);
                }
                OpenArcSet::from_arcs(arcs).map_err(RegionParseError::Region)
            }
        }
    }
}

impl fmt::Display for OpenArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RegionKind::Empty => write!(f, "empty"),
            RegionKind::WholeCircle => write!(f, "all"),
            RegionKind::Union(arcs) => {
                for (i, a) in arcs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", a)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionParseError {
    #[error("bad arc syntax {0:?}, expected start+length")]
    BadArc(String),
    #[error("bad rational in arc {0:?}: {1}")]
    BadRational(String, String),
    #[error(transparent)]
    Region(RegionError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cp(p: i64, q: i64) -> CirclePoint {
        CirclePoint::new(rat(p, q))
    }

    #[test]
    fn arc_membership_with_wrap() {
        let a = Arc::new(rat(3, 4), rat(1, 2)).unwrap();
        assert!(a.contains(&cp(7, 8)));
        assert!(a.contains(&cp(1, 8)));
        assert!(!a.contains(&cp(3, 4))); // open at the start
        assert!(!a.contains(&cp(1, 4))); // open at the end
        assert!(!a.contains(&cp(1, 2)));
    }

    #[test]
    fn punctured_circle_arc() {
        let a = Arc::new(rat(1, 3), rat_int(1)).unwrap();
        assert!(!a.contains(&cp(1, 3)));
        assert!(a.contains(&cp(0, 1)));
        assert!(a.contains(&cp(9, 10)));
        let (s, e) = a.endpoints();
        assert_eq!(s, e);
    }

    #[test]
    fn disjointness_is_enforced() {
        let a = Arc::new(rat_int(0), rat(1, 2)).unwrap();
        let b = Arc::new(rat(1, 4), rat(1, 2)).unwrap();
        assert!(OpenArcSet::from_arcs(vec![a.clone(), b]).is_err());
        // touching endpoints are fine for open arcs
        let c = Arc::new(rat(1, 2), rat(1, 2)).unwrap();
        let u = OpenArcSet::from_arcs(vec![c, a]).unwrap();
        assert_eq!(u.arcs().len(), 2);
        assert_eq!(u.arcs()[0].start(), &rat_int(0));
    }

    #[test]
    fn wrapping_overlap_detected() {
        let a = Arc::new(rat(3, 4), rat(1, 2)).unwrap(); // (3/4, 5/4)
        let b = Arc::new(rat(1, 8), rat(1, 8)).unwrap(); // inside the wrap
        assert!(OpenArcSet::from_arcs(vec![a.clone(), b]).is_err());
        let c = Arc::new(rat(1, 4), rat(1, 8)).unwrap();
        assert!(OpenArcSet::from_arcs(vec![a, c]).is_ok());
    }

    #[test]
    fn boundary_points_dedupe() {
        let u = OpenArcSet::from_arcs(vec![
            Arc::new(rat_int(0), rat(1, 2)).unwrap(),
            Arc::new(rat(1, 2), rat(1, 2)).unwrap(),
        ])
        .unwrap();
        assert_eq!(u.boundary_points(), vec![cp(0, 1), cp(1, 2)]);
        assert!(OpenArcSet::whole_circle().boundary_points().is_empty());
        assert!(OpenArcSet::empty().boundary_points().is_empty());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["all", "empty", "1/4+1/2", "1/4+1/2,7/8+1/16"] {
            let r = OpenArcSet::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(OpenArcSet::parse("1/4").is_err());
        assert!(OpenArcSet::parse("1/4+0").is_err());
        assert!(OpenArcSet::parse("0+1/2,1/4+1/2").is_err());
    }

    #[test]
    fn rotate_region() {
        let u = OpenArcSet::parse("1/4+1/2").unwrap();
        let v = u.rotate(&rat(1, 2));
        assert_eq!(v.to_string(), "3/4+1/2");
        assert!(v.contains(&cp(0, 1)));
    }
}
