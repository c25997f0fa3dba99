//! Exact zeta/Möbius duality on finite posets.
//!
//! The crate covers subset, product-of-sets and partition lattices; H-duals
//! of kernels with the four zeta/Möbius matrices and their Möbius-positive
//! cone certificates; coarse-graining with the class-size h-transform; and
//! the set-valued haploid and multi-allelic Cannings models.
//!
//! All algebra runs on exact rationals ([`rational::Rational`]).

#![allow(clippy::needless_range_loop)]

pub mod cannings;
pub mod cli;
pub mod coarse;
pub mod duality;
pub mod error;
pub mod lattices;
pub mod limits;
pub mod poset;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
pub use rational::{Rational, RationalMatrix};
