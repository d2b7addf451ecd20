//! Finite metric spaces and the `M_p^q` classes.

use crate::scalar::Scalar;

/// Largest point count accepted by [`FiniteMetricSpace::validate`]; the
/// triangle check is cubic.
pub const MAX_VALIDATED_POINTS: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("metric space must contain at least one point")]
    Empty,
    #[error("distance matrix is not square (row {row} has {len} entries, expected {n})")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("too many points for validation: {n} > {max}")]
    TooLarge { n: usize, max: usize },
    #[error("d[{i}][{i}] must be zero")]
    NonZeroDiagonal { i: usize },
    #[error("d[{i}][{j}] != d[{j}][{i}]")]
    NotSymmetric { i: usize, j: usize },
    #[error("d[{i}][{j}] must be strictly positive")]
    NonPositiveOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality fails: d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("point index {index} out of range for a {n}-point space")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A validated finite metric space with an exact distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace<S> {
    n: usize,
    d: Vec<S>,
    labels: Option<Vec<String>>,
}

impl<S: Scalar> FiniteMetricSpace<S> {
    /// Checks square shape, zero diagonal, symmetry, positivity and the
    /// triangle inequality (within the mode's tolerance).
    pub fn validate(matrix: Vec<Vec<S>>) -> Result<Self, MetricError> {
        let n = matrix.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if n > MAX_VALIDATED_POINTS {
            return Err(MetricError::TooLarge {
                n,
                max: MAX_VALIDATED_POINTS,
            });
        }
        let mut d = Vec::with_capacity(n * n);
        for (row, entries) in matrix.into_iter().enumerate() {
            if entries.len() != n {
                return Err(MetricError::NotSquare {
                    row,
                    len: entries.len(),
                    n,
                });
            }
            d.extend(entries);
        }
        Self::from_flat(n, d)
    }

    /// Same checks as [`validate`](Self::validate) on a row-major buffer.
    pub fn from_flat(n: usize, d: Vec<S>) -> Result<Self, MetricError> {
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if n > MAX_VALIDATED_POINTS {
            return Err(MetricError::TooLarge {
                n,
                max: MAX_VALIDATED_POINTS,
            });
        }
        assert_eq!(d.len(), n * n, "flat buffer must hold n*n entries");
        let zero = S::zero();
        for i in 0..n {
            if !d[i * n + i].approx_eq(zero) {
                return Err(MetricError::NonZeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (d[i * n + j], d[j * n + i]);
                if !a.approx_eq(b) {
                    return Err(MetricError::NotSymmetric { i, j });
                }
                if !(a > zero) || !(b > zero) {
                    return Err(MetricError::NonPositiveOffDiagonal { i, j });
                }
            }
        }
        let mut d = d;
        // Clean the diagonal and mirror the upper triangle so that float noise
        // accepted above never leaks into downstream comparisons.
        for i in 0..n {
            d[i * n + i] = zero;
            for j in (i + 1)..n {
                d[j * n + i] = d[i * n + j];
            }
        }
        for j in 0..n {
            for i in 0..n {
                let dij = d[i * n + j];
                for k in 0..n {
                    if !d[i * n + k].approx_le(dij + d[j * n + k]) {
                        return Err(MetricError::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { n, d, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MetricError> {
        if labels.len() != self.n {
            return Err(MetricError::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// One-point space.
    pub fn singleton() -> Self {
        FiniteMetricSpace {
            n: 1,
            d: vec![S::zero()],
            labels: None,
        }
    }

    /// The space where every pair of distinct points is `dist` apart.
    pub fn equilateral(n: usize, dist: S) -> Result<Self, MetricError> {
        let mut d = vec![dist; n * n];
        for i in 0..n {
            d[i * n + i] = S::zero();
        }
        Self::from_flat(n, d)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> S {
        self.d[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.d.chunks(self.n)
    }

    pub fn to_matrix(&self) -> Vec<Vec<S>> {
        self.rows().map(<[S]>::to_vec).collect()
    }

    /// Nonzero distances `d[i][j]`, `i < j`.
    pub fn pair_distances(&self) -> impl Iterator<Item = S> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| self.dist(i, j)))
    }

    pub fn diameter(&self) -> S {
        self.pair_distances().fold(S::zero(), S::max_of)
    }

    pub fn min_distance(&self) -> Option<S> {
        self.pair_distances().reduce(S::min_of)
    }

    /// True iff every nonzero distance lies in `[p, q]` (missing bounds are
    /// unconstrained). Bounds are inclusive.
    pub fn in_class(&self, bounds: &ClassBounds<S>) -> bool {
        self.pair_distances().all(|v| {
            bounds.p.map_or(true, |p| p.approx_le(v)) && bounds.q.map_or(true, |q| v.approx_le(q))
        })
    }

    /// Multiplies every distance by `c > 0`.
    pub fn scale(&self, c: S) -> Self {
        assert!(c > S::zero(), "scale factor must be positive");
        FiniteMetricSpace {
            n: self.n,
            d: self.d.iter().map(|&v| v * c).collect(),
            labels: self.labels.clone(),
        }
    }

    /// The induced metric on `points` (in the given order).
    pub fn subspace(&self, points: &[usize]) -> Result<Self, MetricError> {
        if points.is_empty() {
            return Err(MetricError::Empty);
        }
        if let Some(&index) = points.iter().find(|&&p| p >= self.n) {
            return Err(MetricError::IndexOutOfRange { index, n: self.n });
        }
        let m = points.len();
        let mut d = Vec::with_capacity(m * m);
        for &a in points {
            for &b in points {
                d.push(self.dist(a, b));
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| points.iter().map(|&p| l[p].clone()).collect());
        Ok(FiniteMetricSpace { n: m, d, labels })
    }

    /// Relabels points: point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, MetricError> {
        self.subspace(perm)
    }

    pub fn to_f64(&self) -> FiniteMetricSpace<f64> {
        FiniteMetricSpace {
            n: self.n,
            d: self.d.iter().map(|v| v.to_f64()).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Bounds `p` (minimum nonzero distance) and `q` (maximum distance) of the
/// classes `M_p`, `M^q` and `M_p^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassBounds<S> {
    pub p: Option<S>,
    pub q: Option<S>,
}

impl<S: Scalar> ClassBounds<S> {
    pub fn new(p: Option<S>, q: Option<S>) -> Option<Self> {
        match (p, q) {
            (Some(p), Some(q)) if !(p < q) => None,
            (Some(p), _) if !(p > S::zero()) => None,
            (_, Some(q)) if !(q > S::zero()) => None,
            _ => Some(ClassBounds { p, q }),
        }
    }

    pub fn lower(p: S) -> Self {
        ClassBounds {
            p: Some(p),
            q: None,
        }
    }

    pub fn upper(q: S) -> Self {
        ClassBounds {
            p: None,
            q: Some(q),
        }
    }

    pub fn between(p: S, q: S) -> Option<Self> {
        Self::new(Some(p), Some(q))
    }
}
