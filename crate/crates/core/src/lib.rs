//! Truncated-matrix realizations of the Jacobi group `G^J_1` and its
//! representations: the Schrödinger–Weil (oscillator) representation on Fock
//! space and the discrete-series representations `π_k`, together with
//! squeezed states, closed-form matrix elements and photon statistics.

// `!(x < y)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod ds;
pub mod error;
pub mod generators;
pub mod group;
pub mod observables;
pub mod operator;
pub mod poly;
pub mod special;
pub mod squeeze;
pub mod sw;
pub mod verify;

pub use error::{Error, Result};
pub use operator::{Basis, BasisKind, BasisLabel, BasisTag, StateVector, TruncatedOperator, C64};
