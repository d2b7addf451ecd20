use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{e_nm, euclidean_norm, random_unit_vector, CoefficientNorm, Norm, NormError};

/// Upper-bound certificate for the Banach–Mazur distance between two
/// coefficient norms, using a coordinate permutation as the isomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationDistortion {
    /// `max_{n<m} |g(π n, π m) − f(n, m)|`.
    pub max_pair_gap: f64,
    /// `2·log(1 + δ·max_pair_gap)`.
    pub bm_upper_bound: f64,
    /// `|‖Tx‖_g − ‖x‖_f| <= δ·max_pair_gap·‖x‖₂` held on every sample.
    pub pointwise_check: bool,
    /// Largest `|‖Tx‖_g − ‖x‖_f| / ‖x‖₂` seen.
    pub worst_ratio: f64,
    pub samples: usize,
}

impl PermutationDistortion {
    pub fn to_json(&self) -> Value {
        json!({
            "maxPairGap": self.max_pair_gap,
            "bmUpperBound": self.bm_upper_bound,
            "pointwiseCheck": self.pointwise_check,
            "worstRatio": self.worst_ratio,
            "samples": self.samples,
        })
    }
}

/// Compares `‖·‖_f` with `‖T·‖_g`, where `T` sends coordinate `n` to `π(n)`.
pub fn permutation_distortion(
    f: &CoefficientNorm,
    g: &CoefficientNorm,
    perm: &[usize],
    samples: usize,
    seed: u64,
) -> Result<PermutationDistortion, NormError> {
    let dim = f.dim();
    if g.dim() != dim {
        return Err(NormError::DimensionMismatch {
            expected: dim,
            got: g.dim(),
        });
    }
    if perm.len() != dim {
        return Err(NormError::DimensionMismatch {
            expected: dim,
            got: perm.len(),
        });
    }
    if !crate::distances::is_permutation(perm) {
        return Err(NormError::Malformed("not a permutation".into()));
    }
    if f.alpha() != g.alpha() || f.delta() != g.delta() {
        return Err(NormError::BadConstants);
    }
    let delta = f.delta();
    let mut gap: f64 = 0.0;
    for n in 0..dim {
        for m in (n + 1)..dim {
            gap = gap.max((g.coefficient(perm[n], perm[m]) - f.coefficient(n, m)).abs());
        }
    }
    let bound = delta * gap;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for s in 0..samples {
        // Half the samples sit near some e_{n,m}, where the pair terms dominate.
        let mut x = random_unit_vector(dim, &mut rng);
        if s % 2 == 1 {
            let n = rng.gen_range(0..dim - 1);
            let m = rng.gen_range(n + 1..dim);
            let e = e_nm(n, m, dim)?;
            let t: f64 = rng.gen_range(0.0..0.2);
            x = e.iter().zip(&x).map(|(a, b)| a + t * b).collect();
        }
        let mut tx = vec![0.0; dim];
        for (n, &v) in x.iter().enumerate() {
            tx[perm[n]] = v;
        }
        let len = euclidean_norm(&x);
        let diff = (g.norm(&tx) - f.norm(&x)).abs();
        worst = worst.max(diff / len);
        if diff > bound * len + 1e-12 * len {
            ok = false;
        }
    }
    Ok(PermutationDistortion {
        max_pair_gap: gap,
        bm_upper_bound: 2.0 * (1.0 + bound).ln(),
        pointwise_check: ok,
        worst_ratio: worst,
        samples,
    })
}

/// Result of [`kadets_sum_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct KadetsCheck {
    pub holds: bool,
    /// Largest `gap / (2|F|ε)` over the checked sums.
    pub worst_ratio: f64,
    /// Number of (subset, sign pattern) combinations evaluated.
    pub checked: usize,
}

/// Checks `|‖Σ δ_i x_i‖_X − ‖Σ δ_i y_i‖_Y| < 2|F|ε` for every subset `F` of
/// the pairs with `|F| <= max_subset` and every sign pattern.
pub fn kadets_sum_check(
    x_norm: &dyn Norm,
    y_norm: &dyn Norm,
    pairs: &[(Vec<f64>, Vec<f64>)],
    eps: f64,
    max_subset: usize,
) -> Result<KadetsCheck, NormError> {
    for (i, (x, y)) in pairs.iter().enumerate() {
        let nx = x_norm.try_norm(x)?;
        let ny = y_norm.try_norm(y)?;
        if (nx - 1.0).abs() > crate::scalar::TAU_EQ || (ny - 1.0).abs() > crate::scalar::TAU_EQ {
            return Err(NormError::NonUnitVector(i));
        }
    }
    let mut check = KadetsCheck {
        holds: true,
        worst_ratio: 0.0,
        checked: 0,
    };
    let mut subset = Vec::new();
    visit_subsets(
        pairs.len(),
        max_subset.min(pairs.len()),
        0,
        &mut subset,
        &mut |f| {
            // Sign patterns up to a global flip.
            for signs in 0u32..(1 << (f.len() - 1)) {
                let mut sx = vec![0.0; x_norm.dim()];
                let mut sy = vec![0.0; y_norm.dim()];
                for (pos, &i) in f.iter().enumerate() {
                    let s = if pos > 0 && signs >> (pos - 1) & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    sx.iter_mut()
                        .zip(&pairs[i].0)
                        .for_each(|(a, b)| *a += s * b);
                    sy.iter_mut()
                        .zip(&pairs[i].1)
                        .for_each(|(a, b)| *a += s * b);
                }
                let gap = (x_norm.norm(&sx) - y_norm.norm(&sy)).abs();
                let limit = 2.0 * f.len() as f64 * eps;
                check.worst_ratio = check.worst_ratio.max(gap / limit);
                check.holds &= gap < limit;
                check.checked += 1;
            }
        },
    );
    Ok(check)
}

fn visit_subsets(
    n: usize,
    max: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if !current.is_empty() {
        visit(current);
    }
    if current.len() == max {
        return;
    }
    for i in start..n {
        current.push(i);
        visit_subsets(n, max, i + 1, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normlab::NormOracle;

    #[test]
    fn identical_norms_have_no_gap() {
        let f = CoefficientNorm::with_defaults(4, |n, m| 0.5 + 0.05 * (n * m) as f64).unwrap();
        let out = permutation_distortion(&f, &f, &[0, 1, 2, 3], 200, 1).unwrap();
        assert_eq!(out.max_pair_gap, 0.0);
        assert_eq!(out.bm_upper_bound, 0.0);
        assert!(out.pointwise_check);
    }

    #[test]
    fn constant_gap() {
        let f = CoefficientNorm::with_defaults(4, |_, _| 0.5).unwrap();
        let g = CoefficientNorm::with_defaults(4, |_, _| 1.0).unwrap();
        for perm in [[0, 1, 2, 3], [3, 1, 0, 2]] {
            let out = permutation_distortion(&f, &g, &perm, 200, 2).unwrap();
            assert!((out.max_pair_gap - 0.5).abs() < 1e-15);
            assert!(out.pointwise_check);
        }
    }

    #[test]
    fn kadets_identity_pairs() {
        let e = NormOracle::euclidean(2).unwrap();
        let pts: Vec<Vec<f64>> = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0]];
        let pairs: Vec<_> = pts.iter().map(|p| (p.clone(), p.clone())).collect();
        let out = kadets_sum_check(&e, &e, &pairs, 1e-6, 3).unwrap();
        assert!(out.holds);
        assert_eq!(out.worst_ratio, 0.0);
        // 3 singletons, 3 pairs (2 patterns), 1 triple (4 patterns).
        assert_eq!(out.checked, 3 + 6 + 4);
    }

    #[test]
    fn kadets_rotation_within_bound() {
        let e = NormOracle::euclidean(2).unwrap();
        let theta: f64 = 0.01;
        let pairs: Vec<_> = (0..6)
            .map(|k| {
                let a = k as f64;
                (
                    vec![a.cos(), a.sin()],
                    vec![(a + theta).cos(), (a + theta).sin()],
                )
            })
            .collect();
        // ‖x_i − y_i‖ = 2 sin(θ/2) < θ, so ε = θ/2 satisfies ‖x_i − y_i‖ < 2ε.
        let out = kadets_sum_check(&e, &e, &pairs, theta / 2.0, 4).unwrap();
        assert!(out.holds, "{out:?}");
    }

    #[test]
    fn non_unit_rejected() {
        let e = NormOracle::euclidean(2).unwrap();
        let pairs = vec![(vec![2.0, 0.0], vec![1.0, 0.0])];
        assert_eq!(
            kadets_sum_check(&e, &e, &pairs, 0.1, 1).unwrap_err(),
            NormError::NonUnitVector(0)
        );
    }
}
