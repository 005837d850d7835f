//! Exact billiard maps on partitions of the circle by pythagorean triples.

pub mod arith;
pub mod billiard;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod io;
pub mod lorentz;
pub mod minkowski;
pub mod partition;
pub mod sampling;
pub mod spectral;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
