//! Gadget constructions turning a finite metric (or normed) space into a
//! finite metric space, so that one distance between inputs is controlled by
//! another distance between outputs.

mod banach;
mod bound;
mod levels;
mod separate;

use std::fmt::Display;

use serde_json::Value;

pub use banach::{
    bm_gadget, k_weight, kadets_gadget, BmGadgetParams, BmPoint, KadetsGadgetParams, KadetsPoint,
};
pub use bound::{
    bound, bound_by_cases, bound_forward_correspondence, half_index_range, BoundPoint,
};
pub use levels::{hl_gadget, lipschitz_gadget, LevelGadgetParams, LevelPoint};
pub use separate::{separate, SeparatedPoint, SeparationGadgetParams};

use crate::graph::GraphError;
use crate::normlab::NormError;
use crate::scalar::Scalar;
use crate::space::{FiniteMetricSpace, MetricError};

/// Constructors refuse to build gadgets with more points than this.
pub const MAX_GADGET_POINTS: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("input is not in M_5: some nonzero distance is below 5")]
    InputNotInM5,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("gadget would have {points} points (limit {limit})")]
    TooLarge { points: usize, limit: usize },
    #[error("vector list is not closed: {0}")]
    ClosureViolation(String),
    #[error("no c_m puts c_m·ν(a−b) in (2, 9/4) for vectors {a} and {b}")]
    CoverageViolation { a: usize, b: usize },
    #[error("sphere point {0} does not have norm 1")]
    NonUnitVector(usize),
    #[error("family {0} is empty")]
    EmptyFamily(usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Norm(#[from] NormError),
}

/// A constructed space together with the meaning of each of its points.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget<S, P> {
    pub space: FiniteMetricSpace<S>,
    /// `points[i]` describes point `i` of `space`.
    pub points: Vec<P>,
    /// Construction name and parameters.
    pub provenance: Value,
}

impl<S: Scalar, P: PartialEq + Display> Gadget<S, P> {
    pub(crate) fn new(
        space: FiniteMetricSpace<S>,
        points: Vec<P>,
        provenance: Value,
    ) -> Result<Self, ReductionError> {
        let labels = points.iter().map(|p| p.to_string()).collect();
        let space = space.with_labels(labels)?;
        Ok(Gadget {
            space,
            points,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

pub(crate) fn check_size(points: usize) -> Result<(), ReductionError> {
    if points > MAX_GADGET_POINTS {
        return Err(ReductionError::TooLarge {
            points,
            limit: MAX_GADGET_POINTS,
        });
    }
    Ok(())
}
