//! Exact computational checkers for simplicial algebra.
//!
//! The crate implements, over `Z` and `Z/q`, the machinery needed to verify
//! two structural facts about Moore complexes on finite instances:
//!
//! * for a simplicial algebra over an operad whose levels are generated by
//!   degenerate elements, the boundary of the Moore complex equals the span
//!   of operadic pairings of face-kernel ideals (`algebra::theorem1_sides`);
//! * for a finite simplicial group whose levels are generated by degenerate
//!   elements, the boundary of the Moore complex equals the product of
//!   Peiffer commutators of face-kernel subgroups (`sgroup::theorem2_check`).
//!
//! Supporting subsystems: canonical submodule arithmetic via Hermite normal
//! forms (`matrix`, `modules`), the simplicial/finite-maps category
//! (`simplicial`), the explicit inverse `K` of the normalization functor
//! built from exterior coefficients (`exterior`, `dold_kan`), truncated
//! operads (`operad`), finite group machinery (`group`), the near-ring of
//! exterior words and the free simplicial group it induces on a chain of
//! groups (`nearring`, `boxword`), and seeded instance generators (`gen`).
//!
//! Everything is exact: no floats, overflow checks stay on in release mode.

pub mod algebra;
pub mod boxword;
pub mod dold_kan;
pub mod error;
pub mod exterior;
pub mod gen;
pub mod group;
pub mod json;
pub mod matrix;
pub mod modules;
pub mod nearring;
pub mod operad;
pub mod par;
pub mod sgroup;
pub mod simplicial;

pub use error::{Error, Result};
