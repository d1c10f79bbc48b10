//! Guardable subgraph families for the cops-and-robber game.
//!
//! The crate is organised around five layers:
//!
//! - [`graph`]: simple undirected graphs, distances, isometry, blocks,
//!   closed twins and dismantling orders.
//! - [`families`]: generators for paths, block graphs, blow-ups, vertebrate
//!   fixtures, (multi-layer) generalized Petersen graphs and named fixtures.
//! - [`characterize`]: metric property checkers and structural recognizers
//!   for block, extended block and vertebrate graphs.
//! - [`guard`]: the one-cop guarding strategy, its potential function,
//!   simulation harness and an exact guard-game solver.
//! - [`copnumber`]: exact k-cop game solving and the scripted three-cop
//!   strategy for multi-layer generalized Petersen graphs.

pub mod characterize;
pub mod copnumber;
mod error;
pub mod families;
pub mod graph;
pub mod guard;

pub use error::{Error, Result};
pub use graph::{all_pairs_distances, DistanceMatrix, Graph, SubgraphView, UNREACHABLE};
