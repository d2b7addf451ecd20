//! Finite-dimensional normed spaces: coefficient renormings of Euclidean
//! space, the `e_{n,m}` / `P_{n,m}` geometry, and upper-bound certificates
//! for distances between renormings.

mod checks;
mod geometry;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use checks::{kadets_sum_check, permutation_distortion, KadetsCheck, PermutationDistortion};
pub use geometry::{e_nm, euclidean_norm, pnm_member, pnm_radius};

use crate::space::FiniteMetricSpace;

/// Default `α`.
pub const DEFAULT_ALPHA: f64 = 1.004;
/// Upper end of the admissible window for `α + δ`.
pub const ALPHA_DELTA_MAX: f64 = 200.0 / 199.0;
/// Default `δ`, so that `α + δ` sits exactly at the top of the window.
pub const DEFAULT_DELTA: f64 = ALPHA_DELTA_MAX - DEFAULT_ALPHA;
/// Random vectors drawn for spot checks.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index pair ({n}, {m}) invalid for dimension {dim}")]
    IndexOutOfRange { n: usize, m: usize, dim: usize },
    #[error("alpha and delta must satisfy 1 < alpha < alpha + delta <= 200/199")]
    BadConstants,
    #[error("coefficient f({n}, {m}) = {value} is outside [0, 1]")]
    CoefficientOutOfRange { n: usize, m: usize, value: f64 },
    #[error("coefficient for pair ({n}, {m}) is missing")]
    MissingCoefficient { n: usize, m: usize },
    #[error("dimension must be at least {0}")]
    DimensionTooSmall(usize),
    #[error("vector {0} does not have norm 1")]
    NonUnitVector(usize),
    #[error("norm axiom fails on sampled vectors: {0}")]
    AxiomViolation(String),
    #[error("malformed norm document: {0}")]
    Malformed(String),
}

/// Anything that can measure vectors of a fixed dimension.
pub trait Norm {
    fn dim(&self) -> usize;

    /// The norm of `x`; `x.len()` must equal [`dim`](Self::dim).
    fn norm(&self, x: &[f64]) -> f64;

    fn try_norm(&self, x: &[f64]) -> Result<f64, NormError> {
        if x.len() != self.dim() {
            return Err(NormError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.norm(x))
    }

    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.norm(&diff)
    }
}

/// `‖x‖_f = max(‖x‖₂, max_{n<m} (α + δ·f(n,m))·|x_n + x_m|/√2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientNorm {
    dim: usize,
    alpha: f64,
    delta: f64,
    /// Row-major upper triangle, `f[pair_index(n, m)]`.
    f: Vec<f64>,
}

impl CoefficientNorm {
    pub fn new(
        dim: usize,
        alpha: f64,
        delta: f64,
        f: impl Fn(usize, usize) -> f64,
    ) -> Result<Self, NormError> {
        if dim < 2 {
            return Err(NormError::DimensionTooSmall(2));
        }
        if !(1.0 < alpha && 0.0 < delta && alpha + delta <= ALPHA_DELTA_MAX + 1e-15) {
            return Err(NormError::BadConstants);
        }
        let mut coeffs = Vec::with_capacity(dim * (dim - 1) / 2);
        for n in 0..dim {
            for m in (n + 1)..dim {
                let value = f(n, m);
                if !(0.0..=1.0).contains(&value) {
                    return Err(NormError::CoefficientOutOfRange { n, m, value });
                }
                coeffs.push(value);
            }
        }
        Ok(CoefficientNorm {
            dim,
            alpha,
            delta,
            f: coeffs,
        })
    }

    /// Coefficients taken from the distances of a metric space with values
    /// in `[0, 1]`.
    pub fn from_metric(
        space: &FiniteMetricSpace<f64>,
        alpha: f64,
        delta: f64,
    ) -> Result<Self, NormError> {
        Self::new(space.len(), alpha, delta, |n, m| space.dist(n, m))
    }

    pub fn with_defaults(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self, NormError> {
        Self::new(dim, DEFAULT_ALPHA, DEFAULT_DELTA, f)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    fn pair_index(&self, n: usize, m: usize) -> usize {
        let (n, m) = (n.min(m), n.max(m));
        n * self.dim - n * (n + 1) / 2 + (m - n - 1)
    }

    /// `f(n, m)` for `n != m`.
    pub fn coefficient(&self, n: usize, m: usize) -> f64 {
        self.f[self.pair_index(n, m)]
    }

    /// `h = α + δ·f(n, m)`.
    pub fn h(&self, n: usize, m: usize) -> f64 {
        self.alpha + self.delta * self.coefficient(n, m)
    }

    pub fn to_json(&self) -> Value {
        let mut f = Vec::new();
        for n in 0..self.dim {
            for m in (n + 1)..self.dim {
                f.push(json!([n, m, self.coefficient(n, m)]));
            }
        }
        json!({"kind": "coeff_norm", "dim": self.dim, "alpha": self.alpha, "delta": self.delta, "f": f})
    }

    pub fn from_json(doc: &Value) -> Result<Self, NormError> {
        let bad = |what: &str| NormError::Malformed(what.to_string());
        if doc.get("kind").and_then(Value::as_str) != Some("coeff_norm") {
            return Err(bad("kind must be \"coeff_norm\""));
        }
        let dim = doc
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("dim"))? as usize;
        let alpha = doc
            .get("alpha")
            .and_then(Value::as_f64)
            .unwrap_or(DEFAULT_ALPHA);
        let delta = doc
            .get("delta")
            .and_then(Value::as_f64)
            .unwrap_or(DEFAULT_DELTA);
        let entries = doc
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("f"))?;
        let mut table = vec![vec![None; dim]; dim];
        for e in entries {
            let triple = e
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| bad("f entry"))?;
            let n = triple[0].as_u64().ok_or_else(|| bad("f index"))? as usize;
            let m = triple[1].as_u64().ok_or_else(|| bad("f index"))? as usize;
            let v = triple[2].as_f64().ok_or_else(|| bad("f value"))?;
            if n >= dim || m >= dim || n == m {
                return Err(NormError::IndexOutOfRange { n, m, dim });
            }
            table[n][m] = Some(v);
            table[m][n] = Some(v);
        }
        for n in 0..dim {
            for m in (n + 1)..dim {
                if table[n][m].is_none() {
                    return Err(NormError::MissingCoefficient { n, m });
                }
            }
        }
        Self::new(dim, alpha, delta, |n, m| {
            table[n][m].expect("checked above")
        })
    }
}

impl Norm for CoefficientNorm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn norm(&self, x: &[f64]) -> f64 {
        let mut best = euclidean_norm(x);
        let mut idx = 0;
        for n in 0..self.dim {
            for m in (n + 1)..self.dim {
                let h = self.alpha + self.delta * self.f[idx];
                best = best.max(h * (x[n] + x[m]).abs() / std::f64::consts::SQRT_2);
                idx += 1;
            }
        }
        best
    }
}

/// A norm given by a formula, checked on random vectors when constructed.
#[derive(Debug, Clone, PartialEq)]
pub enum NormOracle {
    Euclidean {
        dim: usize,
    },
    Coefficient(CoefficientNorm),
    /// `max(‖x‖₂ if euclidean, max_i |⟨φ_i, x⟩|)`.
    MaxOfFunctionals {
        dim: usize,
        functionals: Vec<Vec<f64>>,
        euclidean: bool,
    },
}

impl NormOracle {
    pub fn euclidean(dim: usize) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::DimensionTooSmall(1));
        }
        Ok(NormOracle::Euclidean { dim })
    }

    pub fn max_of_functionals(
        dim: usize,
        functionals: Vec<Vec<f64>>,
        euclidean: bool,
    ) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::DimensionTooSmall(1));
        }
        if let Some(f) = functionals.iter().find(|f| f.len() != dim) {
            return Err(NormError::DimensionMismatch {
                expected: dim,
                got: f.len(),
            });
        }
        if !euclidean && rank(&functionals, dim) < dim {
            return Err(NormError::AxiomViolation(
                "functionals do not separate points".into(),
            ));
        }
        let oracle = NormOracle::MaxOfFunctionals {
            dim,
            functionals,
            euclidean,
        };
        oracle.spot_check(DEFAULT_SAMPLES, 0)?;
        Ok(oracle)
    }

    /// Tests positivity, homogeneity and the triangle inequality on random
    /// vectors.
    pub fn spot_check(&self, samples: usize, seed: u64) -> Result<(), NormError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.dim();
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
        };
        for _ in 0..samples {
            let (x, y) = (draw(&mut rng), draw(&mut rng));
            let t: f64 = rng.gen_range(-3.0..3.0);
            let (nx, ny) = (self.norm(&x), self.norm(&y));
            if !(nx > 0.0) {
                return Err(NormError::AxiomViolation("positivity".into()));
            }
            let scaled: Vec<f64> = x.iter().map(|v| t * v).collect();
            if (self.norm(&scaled) - t.abs() * nx).abs() > 1e-9 * (1.0 + nx) {
                return Err(NormError::AxiomViolation("homogeneity".into()));
            }
            let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            if self.norm(&sum) > nx + ny + 1e-9 {
                return Err(NormError::AxiomViolation("triangle inequality".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match self {
            NormOracle::Euclidean { dim } => json!({"kind": "euclidean", "dim": dim}),
            NormOracle::Coefficient(c) => c.to_json(),
            NormOracle::MaxOfFunctionals {
                dim,
                functionals,
                euclidean,
            } => json!({
                "kind": "max_functionals",
                "dim": dim,
                "functionals": functionals,
                "euclidean": euclidean,
            }),
        }
    }

    pub fn from_json(doc: &Value) -> Result<Self, NormError> {
        let bad = |what: &str| NormError::Malformed(what.to_string());
        match doc.get("kind").and_then(Value::as_str) {
            Some("euclidean") => {
                let dim = doc
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("dim"))?;
                Self::euclidean(dim as usize)
            }
            Some("coeff_norm") => Ok(NormOracle::Coefficient(CoefficientNorm::from_json(doc)?)),
            Some("max_functionals") => {
                let dim = doc
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("dim"))?;
                let functionals = doc
                    .get("functionals")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("functionals"))?
                    .iter()
                    .map(|f| {
                        f.as_array()
                            .ok_or_else(|| bad("functional"))?
                            .iter()
                            .map(|v| v.as_f64().ok_or_else(|| bad("functional entry")))
                            .collect::<Result<Vec<f64>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let euclidean = doc
                    .get("euclidean")
                    .and_then(Value::as_bool)
                    .unwrap_or(false);
                Self::max_of_functionals(dim as usize, functionals, euclidean)
            }
            _ => Err(bad("unknown norm kind")),
        }
    }
}

impl Norm for NormOracle {
    fn dim(&self) -> usize {
        match self {
            NormOracle::Euclidean { dim } | NormOracle::MaxOfFunctionals { dim, .. } => *dim,
            NormOracle::Coefficient(c) => c.dim(),
        }
    }

    fn norm(&self, x: &[f64]) -> f64 {
        match self {
            NormOracle::Euclidean { .. } => euclidean_norm(x),
            NormOracle::Coefficient(c) => c.norm(x),
            NormOracle::MaxOfFunctionals {
                functionals,
                euclidean,
                ..
            } => {
                let base = if *euclidean { euclidean_norm(x) } else { 0.0 };
                functionals
                    .iter()
                    .map(|f| f.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs())
                    .fold(base, f64::max)
            }
        }
    }
}

/// A uniformly random unit vector (Euclidean norm), via normalized
/// Box–Muller Gaussians.
pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..dim)
            .map(|_| {
                let u: f64 = rng.gen_range(f64::EPSILON..1.0);
                let v: f64 = rng.gen_range(0.0..1.0);
                (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
            })
            .collect();
        let n = euclidean_norm(&x);
        if n > 1e-6 {
            return x.into_iter().map(|v| v / n).collect();
        }
    }
}

fn rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) =
            (rank..a.len()).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
        else {
            break;
        };
        if a[pivot][col].abs() < 1e-12 {
            continue;
        }
        a.swap(rank, pivot);
        for i in (rank + 1)..a.len() {
            let factor = a[i][col] / a[rank][col];
            for k in col..dim {
                a[i][k] -= factor * a[rank][k];
            }
        }
        rank += 1;
    }
    rank
}
