//! Exact first local cohomology for finite matrix groups over Z/p^l Z.
//!
//! The crate decides triviality of the first local cohomology group
//! H^1_loc(G, M) for finitely generated subgroups G of GL_n(Z/p^l Z)
//! acting on M = (Z/p^l Z)^n, using two independent definitions that are
//! cross-checked against each other:
//!
//! * the per-element local conditions (for every sigma there is an
//!   A_sigma with Z_sigma = (sigma - 1) A_sigma), and
//! * the intersection of kernels of restriction maps to every cyclic
//!   subgroup.
//!
//! Everything is computed exactly over the local ring Z/p^l Z; there is
//! no floating point and no randomized algorithm in the decision path.
//! The `campaign` module packages the engine into deterministic,
//! seed-reproducible verification runs, and the `cohomolocal` binary
//! exposes the whole thing as a CLI. See the examples/ directory for a
//! runnable tour of each capability.

pub mod bruteforce;
pub mod campaign;
pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod ring;

pub mod cli;

pub use error::{Error, Result};
pub use linalg::{InvariantFactors, HowellForm};
pub use matrix::ModMatrix;
pub use ring::Modulus;
