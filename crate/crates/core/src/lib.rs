//! Determinantal codes over finite fields.
//!
//! The projective determinantal variety of `ell x m` matrices of rank at most
//! `t` over GF(q) defines a linear code by evaluating every linear form in the
//! matrix entries at its points. This crate computes the code's weights,
//! weight distribution, minimum distance and generalized Hamming weights from
//! closed forms, and checks all of them against brute-force enumeration.
//!
//! - [`qcomb`]: Gaussian binomials, rank counts and point counts.
//! - [`field`] and [`matrix`]: GF(q) tables, rank, partial traces, enumeration.
//! - [`spectrum`]: the closed forms and recursions for the weights.
//! - [`oracle`]: exhaustive counts used as ground truth.
//! - [`code`]: explicit generator matrices, weight distributions and GHWs.
//! - [`cli`]: the `detcode` command-line front end.

pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod qcomb;
pub mod spectrum;

pub use code::{Code, GhwEntry, GhwMethod, WeightDistribution};
pub use error::{Error, Result};
pub use field::{Elem, FieldTables};
pub use matrix::{GfMatrix, LinearForm};
pub use qcomb::{Dims, ExactInt, Params};
pub use spectrum::{ConjectureVerdict, SliceKey, WeightTable};
