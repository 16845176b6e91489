//! Discrete phytoplankton–zooplankton map with a Holling type II response:
//! fixed points, stability, Neimark–Sacker analysis and orbit simulation.

pub mod cli;
pub mod error;
pub mod fixed_points;
pub mod model;
pub mod ns;
pub mod simulation;
pub mod stability;

pub use error::{Error, Result};
pub use model::{Complex, Matrix2, Parameters, State};
