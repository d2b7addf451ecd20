//! Exhaustive reference computations for tiny instances.

use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

/// Largest `|M|·|N|` accepted by [`gh_brute_force`].
pub const BRUTE_FORCE_PAIRS: usize = 20;

/// Half the minimum distortion over every relation that is a correspondence,
/// found by enumerating all `2^(|M|·|N|)` relations.
pub fn gh_brute_force<S: Scalar>(m: &FiniteMetricSpace<S>, n: &FiniteMetricSpace<S>) -> Option<S> {
    let (na, nb) = (m.len(), n.len());
    let cells = na * nb;
    if cells > BRUTE_FORCE_PAIRS {
        return None;
    }
    let row_mask = |i: usize| ((1u32 << nb) - 1) << (i * nb);
    let col_mask = |j: usize| (0..na).fold(0u32, |acc, i| acc | 1 << (i * nb + j));
    let mut best: Option<S> = None;
    'relations: for rel in 1u32..(1 << cells) {
        if (0..na).any(|i| rel & row_mask(i) == 0) || (0..nb).any(|j| rel & col_mask(j) == 0) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..cells)
            .filter(|c| rel >> c & 1 == 1)
            .map(|c| (c / nb, c % nb))
            .collect();
        let mut worst = S::zero();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                worst = worst.max_of((m.dist(i, k) - n.dist(j, l)).abs());
                if best.is_some_and(|b| worst >= b) {
                    continue 'relations;
                }
            }
        }
        best = Some(worst);
    }
    best.map(Scalar::half)
}

/// Half the minimum over bijections of the largest distance change, by
/// enumerating all permutations.
pub fn gh_bijection_brute_force<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Option<S> {
    if m.len() != n.len() || m.len() > 8 {
        return None;
    }
    let mut perm: Vec<usize> = (0..m.len()).collect();
    let mut best: Option<S> = None;
    loop {
        let mut worst = S::zero();
        for i in 0..perm.len() {
            for j in (i + 1)..perm.len() {
                worst = worst.max_of((m.dist(i, j) - n.dist(perm[i], perm[j])).abs());
            }
        }
        best = Some(best.map_or(worst, |b| b.min_of(worst)));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.map(Scalar::half)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
