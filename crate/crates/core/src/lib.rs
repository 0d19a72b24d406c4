//! Power residue symbols over unramified `p`-adic fields, computed three ways:
//! by the tame-symbol formula, through determinants of finite free pointed
//! `mu_n`-sets, and as commutators in an explicit central extension of
//! `GL_m(K)` by `mu_n` built from relative determinant lines of lattices.

// Index loops mirror the matrix algebra they implement.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod extension;
pub mod lattice;
pub mod muset;
pub mod symbols;
pub mod torsor;
pub mod verify;

pub use error::{Error, Result};
