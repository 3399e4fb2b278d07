//! Hilbert geometries on convex polytopes.
//!
//! Points carry double-double coordinates so that distances stay accurate
//! for points exponentially close to the boundary.

pub mod asymptotics;
pub mod cli;
pub mod cone;
pub mod domain;
pub mod error;
pub mod geodesics;
pub mod metric;
pub mod real;
pub mod render;
pub mod report;
pub mod simplex;

pub use domain::{BoundaryPoint, Chord, Halfspace, Location, Point, Polytope, PolytopeSpec};
pub use error::{Error, Result};
pub use metric::{funk_distance, gromov_product, hilbert_distance, HilbertDistance};
pub use report::{ExperimentReport, Verdict};
