use super::{CoefficientNorm, Norm, NormError};

pub fn euclidean_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `(e_n + e_m)/√2` in dimension `dim` (indices from 0, `n < m`).
///
/// ```
/// let e = metriclab::normlab::e_nm(0, 2, 3).unwrap();
/// assert!((e[0] - 0.5f64.sqrt()).abs() < 1e-15 && e[1] == 0.0);
/// ```
pub fn e_nm(n: usize, m: usize, dim: usize) -> Result<Vec<f64>, NormError> {
    if !(n < m && m < dim) {
        return Err(NormError::IndexOutOfRange { n, m, dim });
    }
    let mut e = vec![0.0; dim];
    e[n] = std::f64::consts::FRAC_1_SQRT_2;
    e[m] = std::f64::consts::FRAC_1_SQRT_2;
    Ok(e)
}

/// Membership in `P_{n,m} = {x : ‖x‖₂ <= h·(x_n + x_m)/√2}`, `h = α + δ·f(n,m)`.
pub fn pnm_member(
    x: &[f64],
    n: usize,
    m: usize,
    norm: &CoefficientNorm,
) -> Result<bool, NormError> {
    if x.len() != norm.dim() {
        return Err(NormError::DimensionMismatch {
            expected: norm.dim(),
            got: x.len(),
        });
    }
    if !(n < m && m < norm.dim()) {
        return Err(NormError::IndexOutOfRange {
            n,
            m,
            dim: norm.dim(),
        });
    }
    let h = norm.h(n, m);
    Ok(euclidean_norm(x) <= h * (x[n] + x[m]) / std::f64::consts::SQRT_2)
}

/// `√(2(h−1)/h)`: on the unit sphere, `P_{n,m}` is the cap of this radius
/// around `e_{n,m}`.
pub fn pnm_radius(h: f64) -> f64 {
    (2.0 * (h - 1.0) / h).sqrt()
}
