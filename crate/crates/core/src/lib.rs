//! Exact computations around Weyl groups and their Iwahori-Hecke algebras:
//! root systems from Cartan matrices, reduced words and Bruhat order,
//! the standard and Kazhdan-Lusztig bases, braid lifts and their
//! invertibility, and Demazure / Demazure-Lusztig operators on the group
//! algebra of the root lattice.
//!
//! All arithmetic is exact (integer lattices, `BigInt` Laurent
//! coefficients). Bulk verification sweeps are data-parallel via rayon
//! when the `parallel` feature (default) is enabled, with a sequential
//! fallback otherwise.

// group handles inside map keys carry memo tables; keys hash and compare
// by the immutable matrix data only
#![allow(clippy::mutable_key_type)]

pub mod braid;
pub mod error;
pub mod hecke;
pub mod kops;
pub mod laurent;
pub mod matrix;
mod par;
pub mod rootdata;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
