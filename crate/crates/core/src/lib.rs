//! Exact computations behind the `PSU(N)` instanton invariants of
//! knot-surgered 4-manifolds: Alexander polynomials from braid words,
//! cyclic branched-cover homology, products of the Alexander polynomial
//! over roots of unity, flat connections on the 3-torus and on knot
//! complements, orientation signs, Donaldson-series expansions and
//! Mahler-measure asymptotics.

pub mod acceptance;
pub mod invariants;
pub mod json;
pub mod knots;
pub mod linalg;
pub mod mahler;
pub mod poly;
pub mod rep_variety;
pub mod series;

pub use knots::{BraidWord, KnotTable, WirtingerPresentation};
pub use linalg::{AbelianGroup, IntMatrix, SmithForm};
pub use poly::{IntPoly, LaurentPoly};
