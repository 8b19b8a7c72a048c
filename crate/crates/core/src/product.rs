//! Products of circle maps on the torus and the product formula for the
//! index.
//!
//! A torus map here is always a product `f x g` of an n-valued and an
//! m-valued circle map; its fixed points are the pairs of factor fixed
//! points. The direct two-dimensional index [`torus_index_direct`] sums
//! local determinant signs over those pairs and never consults the
//! one-dimensional index machinery, so comparing it against
//! `ind(f,U) * ind(g,V)` is a genuine differential test of the product
//! formula.

use thiserror::Error;

use crate::index::{
    fix_finite_perturb, index_crossing, index_schirmer, fixed_points, FixedPointRecord,
    IndexError,
};
use crate::lefschetz::lefschetz;
use crate::nmap::{CirclePoint, NValuedCircleMap};
use crate::rational::{rat_int, sign, Rational};
use crate::region::OpenArcSet;

/// The product of two n-valued circle maps, an `n*m`-valued torus map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusProductMap {
    f: NValuedCircleMap,
    g: NValuedCircleMap,
}

impl TorusProductMap {
    pub fn new(f: NValuedCircleMap, g: NValuedCircleMap) -> Self {
        TorusProductMap { f, g }
    }

    pub fn factor_f(&self) -> &NValuedCircleMap {
        &self.f
    }

    pub fn factor_g(&self) -> &NValuedCircleMap {
        &self.g
    }

    pub fn arity(&self) -> usize {
        self.f.n() * self.g.n()
    }

    /// The `n*m` values at a torus point, sorted lexicographically.
    pub fn evaluate(
        &self,
        x: &Rational,
        y: &Rational,
    ) -> Result<Vec<(CirclePoint, CirclePoint)>, crate::nmap::EvaluateError> {
        let fx = self.f.evaluate(x)?;
        let gy = self.g.evaluate(y)?;
        let mut pairs = Vec::with_capacity(fx.len() * gy.len());
        for a in &fx {
            for b in &gy {
                pairs.push((a.clone(), b.clone()));
            }
        }
        pairs.sort();
        Ok(pairs)
    }

    /// Swaps the factors.
    pub fn swap(&self) -> TorusProductMap {
        TorusProductMap {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }
}

/// Builds the product map.
pub fn product_map(f: &NValuedCircleMap, g: &NValuedCircleMap) -> TorusProductMap {
    TorusProductMap::new(f.clone(), g.clone())
}

/// The product splits if and only if each factor splits.
pub fn product_is_split(pm: &TorusProductMap) -> bool {
    pm.f.is_split() && pm.g.is_split()
}

/// Brute-force splitness: the product's strand pairs are matched across
/// the seam purely by endpoint values, and the product splits exactly when
/// every pair closes onto itself. Neither the factor criterion nor the
/// stored monodromies are consulted, so this serves as their oracle.
pub fn product_is_split_brute_force(pm: &TorusProductMap) -> Option<bool> {
    let f_starts: Vec<CirclePoint> = pm
        .f
        .strands()
        .iter()
        .map(|s| CirclePoint::new(s.start_value().clone()))
        .collect();
    let f_ends: Vec<CirclePoint> = pm
        .f
        .strands()
        .iter()
        .map(|s| CirclePoint::new(s.end_value().clone()))
        .collect();
    let g_starts: Vec<CirclePoint> = pm
        .g
        .strands()
        .iter()
        .map(|s| CirclePoint::new(s.start_value().clone()))
        .collect();
    let g_ends: Vec<CirclePoint> = pm
        .g
        .strands()
        .iter()
        .map(|s| CirclePoint::new(s.end_value().clone()))
        .collect();
    let n = pm.f.n();
    let m = pm.g.n();
    for i in 0..n {
        for j in 0..m {
            let mut found = None;
            for (i2, fs) in f_starts.iter().enumerate() {
                for (j2, gs) in g_starts.iter().enumerate() {
                    if fs == &f_ends[i] && gs == &g_ends[j] {
                        if found.is_some() {
                            return None; // ambiguous continuation
                        }
                        found = Some((i2, j2));
                    }
                }
            }
            if found? != (i, j) {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// A fixed point of a product map with its factor slopes.
///
/// For transverse factors the local index is the sign of
/// `det(I - diag(lambda, mu)) = (1 - lambda)(1 - mu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusFixedPoint {
    pub location: (CirclePoint, CirclePoint),
    pub slopes: (Rational, Rational),
    pub local_index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("a factor has degenerate fixed intervals; perturb it first")]
    Degenerate,
}

/// A product region `U x V` on the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRegion {
    pub u: OpenArcSet,
    pub v: OpenArcSet,
}

impl ProductRegion {
    pub fn new(u: OpenArcSet, v: OpenArcSet) -> Self {
        ProductRegion { u, v }
    }

    pub fn whole_torus() -> Self {
        ProductRegion {
            u: OpenArcSet::whole_circle(),
            v: OpenArcSet::whole_circle(),
        }
    }

    pub fn contains(&self, x: &CirclePoint, y: &CirclePoint) -> bool {
        let in_u = self.u.is_whole_circle() || self.u.contains(x);
        let in_v = self.v.is_whole_circle() || self.v.contains(y);
        in_u && in_v
    }
}

/// One-sided crossing index of a 1D record: `(s_in + s_out) / 2` with
/// `s = sign(1 - slope)` on each side.
fn one_dim_crossing(rec: &FixedPointRecord) -> i64 {
    let one = rat_int(1);
    (sign(&(&one - &rec.slope_in)) + sign(&(&one - &rec.slope))) / 2
}

/// The 2D local index of a product fixed point: determinant sign for
/// transverse pairs, quadrant sign differences at breakpoint corners.
fn local_index_2d(px: &FixedPointRecord, py: &FixedPointRecord) -> i64 {
    let one = rat_int(1);
    if !px.degenerate && !py.degenerate {
        let det = (&one - &px.slope) * (&one - &py.slope);
        sign(&det)
    } else {
        one_dim_crossing(px) * one_dim_crossing(py)
    }
}

/// Fixed points of the product: the Cartesian product of the factor fixed
/// point lists. Errors when either factor has degenerate intervals.
pub fn torus_fixed_points(pm: &TorusProductMap) -> Result<Vec<TorusFixedPoint>, ProductError> {
    let rf = fixed_points(&pm.f);
    let rg = fixed_points(&pm.g);
    if !rf.is_fix_finite() || !rg.is_fix_finite() {
        return Err(ProductError::Degenerate);
    }
    let mut out = Vec::with_capacity(rf.points.len() * rg.points.len());
    for px in &rf.points {
        for py in &rg.points {
            out.push(TorusFixedPoint {
                location: (px.location.clone(), py.location.clone()),
                slopes: (px.slope.clone(), py.slope.clone()),
                local_index: local_index_2d(px, py),
            });
        }
    }
    Ok(out)
}

/// The direct two-dimensional index over `U x V`: the sum of local
/// determinant signs of the product fixed points inside the region. The
/// product formula is never invoked.
pub fn torus_index_direct(
    pm: &TorusProductMap,
    region: &ProductRegion,
) -> Result<i64, ProductError> {
    if !crate::index::is_admissible(&pm.f, &region.u) {
        return Err(IndexError::NotAdmissible("factor f on region U".to_owned()).into());
    }
    if !crate::index::is_admissible(&pm.g, &region.v) {
        return Err(IndexError::NotAdmissible("factor g on region V".to_owned()).into());
    }
    if region.u.is_empty() || region.v.is_empty() {
        return Ok(0);
    }
    let points = torus_fixed_points(pm)?;
    Ok(points
        .iter()
        .filter(|p| region.contains(&p.location.0, &p.location.1))
        .map(|p| p.local_index)
        .sum())
}

fn index_both(map: &NValuedCircleMap, region: &OpenArcSet) -> Result<i64, IndexError> {
    let s = index_schirmer(map, region)?;
    let c = index_crossing(map, region)?;
    assert_eq!(s, c, "index algorithms disagree");
    Ok(s)
}

/// All the numbers entering the product formula check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductFormulaReport {
    /// 2D oracle on the (fix-finite perturbations of the) factors.
    pub direct: i64,
    pub f_index: i64,
    pub g_index: i64,
    /// 1D indices after perturbing each factor; equal to the originals by
    /// homotopy invariance, making the product-homotopy stability explicit.
    pub f_perturbed_index: i64,
    pub g_perturbed_index: i64,
}

impl ProductFormulaReport {
    pub fn pass(&self) -> bool {
        self.direct == self.f_index * self.g_index
            && self.f_perturbed_index == self.f_index
            && self.g_perturbed_index == self.g_index
    }
}

/// Checks `ind(f x g, U x V) = ind(f, U) * ind(g, V)` exactly, with the
/// left side computed by the 2D oracle on fix-finite perturbations of the
/// factors and the right side by the 1D algorithms on the originals.
pub fn verify_product_formula(
    pm: &TorusProductMap,
    region: &ProductRegion,
) -> Result<ProductFormulaReport, ProductError> {
    let f_index = index_both(&pm.f, &region.u)?;
    let g_index = index_both(&pm.g, &region.v)?;
    let (f_finite, _) = fix_finite_perturb(&pm.f);
    let (g_finite, _) = fix_finite_perturb(&pm.g);
    let finite_pm = TorusProductMap::new(f_finite.clone(), g_finite.clone());
    let direct = torus_index_direct(&finite_pm, region)?;
    Ok(ProductFormulaReport {
        direct,
        f_index,
        g_index,
        f_perturbed_index: index_both(&f_finite, &region.u)?,
        g_perturbed_index: index_both(&g_finite, &region.v)?,
    })
}

/// Both sides of `L(f x g) = L(f) L(g)`, with the torus Lefschetz number
/// realized as the direct index over the whole torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzProductReport {
    pub torus_lefschetz: i64,
    pub f_lefschetz: i64,
    pub g_lefschetz: i64,
}

impl LefschetzProductReport {
    pub fn pass(&self) -> bool {
        self.torus_lefschetz == self.f_lefschetz * self.g_lefschetz
    }
}

pub fn verify_lefschetz_product(
    f: &NValuedCircleMap,
    g: &NValuedCircleMap,
) -> Result<LefschetzProductReport, ProductError> {
    let (f_finite, _) = fix_finite_perturb(f);
    let (g_finite, _) = fix_finite_perturb(g);
    let pm = TorusProductMap::new(f_finite, g_finite);
    let direct = torus_index_direct(&pm, &ProductRegion::whole_torus())?;
    Ok(LefschetzProductReport {
        torus_lefschetz: direct,
        f_lefschetz: lefschetz(f).value,
        g_lefschetz: lefschetz(g).value,
    })
}
