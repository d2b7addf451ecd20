pub mod cli;
pub mod distances;
pub mod games;
pub mod graph;
pub mod io;
pub mod normlab;
pub mod reductions;
pub mod scalar;
pub mod space;
pub mod suites;

pub use scalar::{NumericMode, Rational, Scalar};
pub use space::{ClassBounds, FiniteMetricSpace, MetricError};
