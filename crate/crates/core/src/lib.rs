//! Minor certificates, grid minors and treewidth tools for geometric
//! intersection graphs, with a win/win vertex cover solver on top.

pub mod config;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod gridminor;
pub mod harness;
pub mod intersect;
pub mod minor;
pub mod solver;
pub mod treewidth;

pub use config::Limits;
pub use error::{Error, Result};
