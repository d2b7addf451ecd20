//! Seeded random instances. Distances are drawn on a rational grid and the
//! matrix is repaired by shortest-path closure, so every instance is a metric.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;
use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

/// Shape of a random metric space: off-diagonal entries are drawn from
/// `{lo, lo+1, …, hi} / denominator` before the closure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomInstanceSpec {
    pub points: usize,
    pub lo: i64,
    pub hi: i64,
    pub denominator: i64,
}

impl RandomInstanceSpec {
    /// Distances in the integer range `[lo, hi]` on a grid of step `1/denominator`.
    pub fn new(points: usize, lo: i64, hi: i64, denominator: i64) -> Self {
        RandomInstanceSpec {
            points,
            lo: lo * denominator,
            hi: hi * denominator,
            denominator,
        }
    }

    /// Distances in `[lo/denominator, hi/denominator]`.
    pub fn with_numerators(points: usize, lo: i64, hi: i64, denominator: i64) -> Self {
        RandomInstanceSpec {
            points,
            lo,
            hi,
            denominator,
        }
    }

    pub fn sample<S: Scalar>(&self, rng: &mut ChaCha8Rng) -> FiniteMetricSpace<S> {
        let (lo, hi, den) = (self.lo, self.hi, self.denominator);
        let n = self.points;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let k = rng.gen_range(lo..=hi);
                edges.push((i, j, S::from_i64(k) / S::from_i64(den)));
            }
        }
        close(n, edges, S::from_i64(hi) / S::from_i64(den))
    }
}

/// Shortest-path closure of a complete weighted graph whose weights are all
/// at most `cap`.
pub(crate) fn close<S: Scalar>(
    n: usize,
    edges: Vec<(usize, usize, S)>,
    cap: S,
) -> FiniteMetricSpace<S> {
    if n == 1 {
        return FiniteMetricSpace::singleton();
    }
    WeightedGraph::from_edges(n, edges)
        .and_then(|g| g.metric(cap))
        .expect("closure of positive weights is a metric")
}

/// Multiplies every distance by `1 + t` with `t` drawn from
/// `[lo_permille, hi_permille] / 1000`, optionally clamps into `[min, max]`,
/// and closes the result.
pub fn perturb<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    rng: &mut ChaCha8Rng,
    lo_permille: i64,
    hi_permille: i64,
    clamp: Option<(S, S)>,
) -> FiniteMetricSpace<S> {
    let n = m.len();
    let mut edges = Vec::new();
    let mut cap = S::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let t = rng.gen_range(lo_permille..=hi_permille);
            let mut v = m.dist(i, j) * S::from_i64(1000 + t) / S::from_i64(1000);
            if let Some((lo, hi)) = clamp {
                v = v.max_of(lo).min_of(hi);
            }
            cap = cap.max_of(v);
            edges.push((i, j, v));
        }
    }
    close(n, edges, cap)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
