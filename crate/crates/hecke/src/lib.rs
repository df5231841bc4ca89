//! Exact computational engine for the extended affine Weyl group of type
//! affine B3 (attached to Sp6), its Hecke algebra over `Z[v, v^{-1}]`, and
//! the based rings of its two-sided cells with `a`-values 2 and 3.
//!
//! Capabilities:
//!
//! * exact Laurent-polynomial arithmetic in `v` ([`laurent`]);
//! * a faithful integer-matrix model of the group, with lengths, descents,
//!   Bruhat order, and canonical words ([`weyl`]), cross-checked against an
//!   independent braid-rewriting word model ([`wordmodel`]);
//! * Kazhdan-Lusztig polynomials, `μ`-coefficients, and the canonical basis
//!   `{C_w}` of the Hecke algebra ([`kl`]);
//! * structure constants in both the standard and canonical bases
//!   ([`product`]);
//! * explicit coordinates for the two-sided cells with `a`-value 2 (two
//!   cells, called `E` and `F` here) and `a`-value 3 (cell `D`), their left
//!   cells, and membership tests ([`cells`]);
//! * generalized star operations and left/right strings ([`star`]);
//! * the based ring (asymptotic Hecke algebra) attached to each supported
//!   cell: `γ`-coefficients and `t`-basis products ([`jring`]);
//! * representation rings of `SL2` (and `SL2 × Z/2`) with Clebsch-Gordan
//!   tensor arithmetic, matrix rings over them, and the explicit
//!   isomorphisms from the based rings ([`rep`]);
//! * verification suites that mechanically check the closed-form
//!   multiplication laws and ring isomorphisms ([`verify`]).

pub mod cells;
pub mod engine;
pub mod fasthash;
pub mod jring;
pub mod kl;
pub mod laurent;
pub mod product;
pub mod rep;
pub mod star;
pub mod verify;
pub mod weyl;
pub mod wordmodel;

pub use engine::Engine;
