//! Resolving sets for stochastic block model graphs.
//!
//! The crate covers the whole pipeline: graph construction and distance
//! matrices, block model sampling and closed-form bounds, the MINE lattice
//! solver that sizes random per-community node selections, exact and
//! heuristic resolving-set search, and a seeded experiment harness.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod graph;
pub mod harness;
pub mod lattice;
pub mod mine;
pub mod resolve;
pub mod sbm;

pub use error::{Error, Result};
pub use graph::{Distance, DistanceMatrix, Graph};
pub use lattice::Allocation;
pub use mine::{mine, MineSolution};
pub use sbm::SbmParams;
