//! Line percolation on the grid `[n]^d`.

pub mod cli;
pub mod engine;
pub mod estimator;
pub mod error;
pub mod grid;
pub mod minset;
pub mod processes;
pub mod sampling;
pub mod theory;

pub use engine::{closure, percolates, InfectionState};
pub use error::{Error, Result};
pub use grid::{GridSpec, LineId, Point};
