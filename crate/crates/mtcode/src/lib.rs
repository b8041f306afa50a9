//! Exact constructions for multi-twisted (MT) codes over finite fields.
//!
//! An MT code with shift constants `lambda_1..lambda_l` and block lengths
//! `m_1..m_l` is represented by its reduced generator polynomial matrix
//! (GPM): the Hermite normal form of any generating stack over `F_q[x]`. The
//! companion matrix `A` satisfies the identical equation
//! `A * G = diag(x^{m_j} - lambda_j)` and drives every dual construction:
//!
//! - [`duals::euclidean_dual`] builds the dual GPM from `A` by substituting
//!   x -> 1/x, rescaling, reducing in the twisted quotient rings, and
//!   transposing.
//! - [`duals::right_galois_dual`] and [`duals::left_galois_dual`] are
//!   Frobenius images of the Euclidean dual.
//! - [`duals::two_sided_galois_dual`] intersects the right and left duals
//!   and certifies the result with an upper-triangular matrix pair (X, Y).
//!
//! Every construction can be cross-checked against [`oracle::ExpandedCode`],
//! a brute-force linear-algebra view of the same code.

// index arithmetic mirrors the matrix formulas throughout
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]

pub mod code;
pub mod duals;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod poly;
pub mod polymat;
pub mod report;

pub use code::{CodeSpecFile, FieldSpecFile, GeneratorSpec, MTCode};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use oracle::{DualSide, ExpandedCode};
pub use poly::{LaurentPoly, Poly};
pub use polymat::{solve_left_factor, HnfResult, LaurentMatrix, PolyMatrix};
