//! Exact computer algebra for finite-dimensional Jordan algebras and
//! superalgebras over the rationals or a prime field GF(p), p odd.
//!
//! The crate builds algebras from structure-constant tables, checks the
//! defining identities (supercommutativity, the linearized Jordan identity,
//! and the super-Jordan property via Grassmann envelopes), and solves for
//! delta-derivation spaces both at fixed rational delta and symbolically as
//! a matrix pencil in delta. All arithmetic is exact; there is no floating
//! point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `jord-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod check;
pub mod field;
pub mod grassmann;
pub mod int;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rat;
pub mod rng;
pub mod solver;
pub mod zoo;

#[cfg(test)]
pub(crate) mod testkit;

pub use algebra::{Element, Involution, Parity, Superalgebra};
pub use field::{Field, Scalar};
pub use int::Int;
pub use poly::DeltaPoly;
pub use rat::Rat;
