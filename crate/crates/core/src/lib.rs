//! Exact-arithmetic toolkit for the quadratic assignment problem (QAP) with
//! block-structured matrices.
//!
//! The QAP in Koopmans-Beckmann form asks for a permutation `π` minimizing
//!
//! ```text
//! Z_π(A, B) = Σ_i Σ_j a[π(i)][π(j)] · b[i][j]
//! ```
//!
//! This crate covers the special cases where one matrix carries a simple
//! block structure:
//!
//! * [`classes`]: construction, recognition and random generation of
//!   monotone, anti-Monge, sum, product, block, multi-cut and 1-λ-1 matrices.
//! * [`cut`]: the two-block closed form and identity-optimality for
//!   monotone anti-Monge × multi-cut instances.
//! * [`pattern`]: the quadratic programs behind bad / very bad ensembles and
//!   pattern complexity classification.
//! * [`product_block`]: the polynomial solver for the Product-Block QAP.
//! * [`reductions`]: Partition and Graph Bisection reduction generators with
//!   desk-scale verifiers.
//!
//! Every number is an exact [`Rational`]; there is no floating point in any
//! solver path. A brute-force [`oracle`] backs all of the solvers in tests.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod classes;
pub mod cut;
mod error;
pub mod gen;
mod lp;
mod matrix;
pub mod oracle;
pub mod pattern;
mod permutation;
pub mod product_block;
mod qap;
mod rational;
pub mod reductions;

pub use error::{Error, Hypothesis, Result};
pub use lp::nonnegative_solution;
pub use matrix::{int_matrix, SymMatrix};
pub use permutation::Permutation;
pub use qap::{block_sums, evaluate, QapInstance};
pub use rational::{int, parse_rational, rat, rational_sqrt, ParseRationalError, Rational};
