//! Ideals of equations over free groups.
//!
//! Given a finitely generated subgroup `H` of a free group and target elements
//! `g1..gm`, this crate computes normal generators of the kernel of the
//! evaluation map `H * <x1..xm> -> F_n`, the minimum degree of a nontrivial
//! equation in it, existence of equations of a given degree, and the full set
//! of realized degrees.

pub mod automata;
pub mod cli;
pub mod degrees;
pub mod error;
pub mod folding;
pub mod graphs;
pub mod ideal;
pub mod moves;
pub mod oracle;
pub mod words;

pub use error::{Error, Result};
