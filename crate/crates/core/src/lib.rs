//! Exact symbolic toolkit for reductive maximal-rank subalgebras of simple
//! Lie algebras, the root-lattice quotient attached to such a subalgebra,
//! and the classification and verification of invariant Poisson brackets
//! and phi-brackets on the corresponding homogeneous space.
//!
//! Everything is computed in exact arithmetic: integers, rationals, and
//! elements of cyclotomic fields. There is no floating point anywhere in
//! the computational path.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod brackets;
pub mod error;
pub mod multivec;
pub mod rootsys;
pub mod scalars;
pub mod subsystems;

pub use error::{Error, Result};
pub use scalars::CycQ;
