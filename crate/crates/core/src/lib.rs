//! Exact fixed point index computations for piecewise-linear n-valued
//! self-maps of the circle.
//!
//! An n-valued map sends each point of the circle to an unordered set of
//! exactly n distinct points. This crate represents such maps by exact
//! rational PL strand lifts over the fundamental domain together with a
//! seam monodromy permutation, and computes their local fixed point
//! indices two independent ways:
//!
//! * the constructive route (perturb to finitely many fixed points,
//!   isolate, split, sum classical 1D indices), and
//! * a direct signed diagonal-crossing count that never perturbs.
//!
//! Around the index sit its classical identities, all checked exactly:
//! Lefschetz numbers (`L(f) = n - deg f = ind(f, X)`), an averaging
//! formula over finite cyclic covers, and a product formula on the torus.
//! The [`harness`] module turns the defining axioms of the index
//! (homotopy invariance, additivity, splitting, normalization) into
//! seeded differential test suites over generated admissible pairs.
//!
//! Everything is computed over arbitrary-precision rationals; there are
//! no tolerances because there is no rounding.
//!
//! ```
//! use nvfix_core::nmap::NValuedCircleMap;
//! use nvfix_core::region::OpenArcSet;
//! use nvfix_core::index::{index_crossing, index_schirmer};
//!
//! // the unsplit 2-valued "square root" map of degree 1
//! let f = NValuedCircleMap::linear_map(2, 1);
//! let whole = OpenArcSet::whole_circle();
//! assert_eq!(index_schirmer(&f, &whole).unwrap(), 1);
//! assert_eq!(index_crossing(&f, &whole).unwrap(), 1);
//! ```

pub mod covering;
pub mod harness;
pub mod homotopy;
pub mod index;
pub mod io;
pub mod lefschetz;
pub mod nmap;
pub mod product;
pub mod rational;
pub mod region;

pub use nmap::{CirclePoint, NValuedCircleMap, PLFunction, Permutation};
pub use rational::Rational;
pub use region::{Arc, OpenArcSet};
