//! Exact computer algebra for Macdonald-type q-difference operators.
//!
//! The crate builds Baker-Akhiezer eigenfunctions of Macdonald, Askey-Wilson,
//! Koornwinder and deformed difference operators at integer multiplicities,
//! and verifies bispectral duality, algebraic integrability, shift operators
//! and the classical norm/evaluation/symmetry identities by exact symbolic
//! computation. All arithmetic happens over the field of rational functions
//! in a formal root `s` of `q`, so every check is an exact identity.

pub mod baker;
pub mod bc;
pub mod deformed;
pub mod error;
pub mod hull;
pub mod lattice;
pub mod laurent;
pub mod ops;
pub mod quasi;
pub mod ratfun;
pub mod rings;
pub mod rootdata;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::{Exp, PairedLattice};
pub use laurent::LaurentPoly;
pub use quasi::{QuasiPoly, Var};
pub use scalar::{IntPoly, Rat, Scalar};

#[cfg(test)]
mod scalar_tests;

#[cfg(test)]
mod lattice_tests;

#[cfg(test)]
mod rootdata_tests;

#[cfg(test)]
mod ops_tests;

#[cfg(test)]
mod bc_tests;
