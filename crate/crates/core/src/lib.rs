//! Exact computation of normalized symmetric-group characters.
//!
//! The crate computes characters of irreducible representations of `S_n`
//! four independent ways — the Murnaghan–Nakayama rule, a generalized
//! Frobenius formula evaluated by nested residue extraction, generalized
//! Kerov polynomials in free cumulants, and Stanley's rectangular formula —
//! and cross-validates them exhaustively at desk scale, together with the
//! closed-form character bounds they imply.  All arithmetic is exact:
//! arbitrary-precision rationals, truncated Laurent series with honest
//! window bookkeeping, and sparse multivariate polynomials.

pub mod acceptance;
pub mod bounds;
pub mod characters;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod kerov;
pub mod multipoly;
pub mod perm;
pub mod rat;
pub mod report;
pub mod series;

pub use diagram::{Basis, CumulantVector, YoungDiagram};
pub use error::{Error, Result};
pub use multipoly::{Monomial, MultiPoly, Var};
pub use perm::{CycleType, Permutation};
pub use rat::Rat;
pub use series::LaurentSeries;
