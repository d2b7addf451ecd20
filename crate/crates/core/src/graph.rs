//! Capped shortest-path completion of partially specified distances.

use crate::scalar::Scalar;
use crate::space::{FiniteMetricSpace, MetricError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({i}, {j}) has a non-positive weight")]
    NonPositiveWeight { i: usize, j: usize },
    #[error("edge ({i}, {j}) listed twice with different weights")]
    ConflictingEdge { i: usize, j: usize },
    #[error("edge ({i}, {j}) references a vertex outside 0..{n}")]
    VertexOutOfRange { i: usize, j: usize, n: usize },
    #[error("cap must be positive")]
    NonPositiveCap,
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Undirected graph with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<S> {
    n: usize,
    edges: Vec<(usize, usize, S)>,
}

impl<S: Scalar> WeightedGraph<S> {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for (i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    /// Adds an undirected edge. Repeating an edge with the same weight is a
    /// no-op; a different weight is an error.
    pub fn add_edge(&mut self, i: usize, j: usize, w: S) -> Result<(), GraphError> {
        if i >= self.n || j >= self.n {
            return Err(GraphError::VertexOutOfRange { i, j, n: self.n });
        }
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        if !(w > S::zero()) {
            return Err(GraphError::NonPositiveWeight { i, j });
        }
        let (a, b) = (i.min(j), i.max(j));
        if let Some(&(_, _, existing)) = self.edges.iter().find(|&&(x, y, _)| x == a && y == b) {
            if existing.approx_eq(w) {
                return Ok(());
            }
            return Err(GraphError::ConflictingEdge { i: a, j: b });
        }
        self.edges.push((a, b, w));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, S)] {
        &self.edges
    }

    /// All-pairs shortest paths clamped at `cap`; disconnected pairs get
    /// `cap`. The result is validated as a metric.
    pub fn metric(&self, cap: S) -> Result<FiniteMetricSpace<S>, GraphError> {
        let d = self.capped_distances(cap)?;
        Ok(FiniteMetricSpace::from_flat(self.n, d)?)
    }

    fn capped_distances(&self, cap: S) -> Result<Vec<S>, GraphError> {
        if !(cap > S::zero()) {
            return Err(GraphError::NonPositiveCap);
        }
        let n = self.n;
        // Distances at or above the cap are clamped anyway, so starting every
        // pair at `cap` and relaxing keeps all entries bounded.
        let mut d = vec![cap; n * n];
        for i in 0..n {
            d[i * n + i] = S::zero();
        }
        for &(i, j, w) in &self.edges {
            let w = w.min_of(cap);
            if w < d[i * n + j] {
                d[i * n + j] = w;
                d[j * n + i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if !(dik < cap) {
                    continue;
                }
                for j in 0..n {
                    let via = dik + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        Ok(d)
    }
}

/// `min(shortest-path distance, cap)` for every pair of vertices.
pub fn graph_metric<S: Scalar>(
    g: &WeightedGraph<S>,
    cap: S,
) -> Result<FiniteMetricSpace<S>, GraphError> {
    g.metric(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph<f64> {
        WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn shortest_path() {
        let m = graph_metric(&path3(), 10.0).unwrap();
        assert_eq!(m.dist(0, 2), 2.0);
    }

    #[test]
    fn cap_binds() {
        let m = graph_metric(&path3(), 1.5).unwrap();
        assert_eq!(m.dist(0, 2), 1.5);
        assert_eq!(m.dist(0, 1), 1.0);
    }

    #[test]
    fn disconnected_pairs_get_cap() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        let m = graph_metric(&g, 3.0).unwrap();
        assert_eq!(m.dist(0, 2), 3.0);
        assert_eq!(m.dist(1, 2), 3.0);
    }

    #[test]
    fn edge_validation() {
        let mut g = WeightedGraph::<f64>::new(2);
        assert_eq!(g.add_edge(0, 0, 1.0), Err(GraphError::SelfLoop(0)));
        assert!(matches!(
            g.add_edge(0, 1, 0.0),
            Err(GraphError::NonPositiveWeight { .. })
        ));
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(1, 0, 1.0).unwrap();
        assert!(matches!(
            g.add_edge(1, 0, 2.0),
            Err(GraphError::ConflictingEdge { .. })
        ));
        assert!(matches!(
            g.add_edge(0, 5, 2.0),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(g.metric(0.0).unwrap_err(), GraphError::NonPositiveCap);
    }
}
