use std::fmt;

use serde_json::json;

use super::{check_size, Gadget, ReductionError};
use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

/// Truncation of the level index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelGadgetParams {
    pub k_min: i64,
    pub k_max: i64,
}

/// A point of a level gadget: `(i, k)` or the distinguished point ♣.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelPoint {
    Level { i: usize, k: i64 },
    Club,
}

impl fmt::Display for LevelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelPoint::Level { i, k } => write!(f, "({i},{k})"),
            LevelPoint::Club => write!(f, "club"),
        }
    }
}

/// `d̃((i,k),(j,l)) = |10k − 10l| + min{1, 2^{min(k,l)}·d(i,j)}` and
/// `d̃((i,k),♣) = |10k + 4| + 1`, on levels `k_min..=k_max`.
///
/// Points are ordered level by level (`k` increasing, then `i`), with ♣ last.
pub fn lipschitz_gadget<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    params: LevelGadgetParams,
) -> Result<Gadget<S, LevelPoint>, ReductionError> {
    if !(params.k_min <= 0 && 0 <= params.k_max) {
        return Err(ReductionError::InvalidParams(
            "levels must satisfy k_min <= 0 <= k_max".into(),
        ));
    }
    build(m, params, "lipschitz_gadget")
}

/// The same construction on non-positive levels only (`k_max = 0`).
pub fn hl_gadget<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    params: LevelGadgetParams,
) -> Result<Gadget<S, LevelPoint>, ReductionError> {
    if !(params.k_min <= 0 && params.k_max == 0) {
        return Err(ReductionError::InvalidParams(
            "levels must satisfy k_min <= 0 = k_max".into(),
        ));
    }
    build(m, params, "hl_gadget")
}

fn build<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    params: LevelGadgetParams,
    name: &str,
) -> Result<Gadget<S, LevelPoint>, ReductionError> {
    let levels = (params.k_max - params.k_min + 1) as usize;
    check_size(m.len() * levels + 1)?;
    let mut points: Vec<LevelPoint> = (params.k_min..=params.k_max)
        .flat_map(|k| (0..m.len()).map(move |i| LevelPoint::Level { i, k }))
        .collect();
    points.push(LevelPoint::Club);
    let n = points.len();
    let one = S::one();
    let mut d = Vec::with_capacity(n * n);
    for a in &points {
        for b in &points {
            let v = match (*a, *b) {
                _ if a == b => S::zero(),
                (LevelPoint::Level { i, k }, LevelPoint::Level { i: j, k: l }) => {
                    let low = S::pow2(k.min(l) as i32);
                    S::from_i64(10 * (k - l).abs()) + one.min_of(low * m.dist(i, j))
                }
                (LevelPoint::Level { k, .. }, LevelPoint::Club)
                | (LevelPoint::Club, LevelPoint::Level { k, .. }) => {
                    S::from_i64((10 * k + 4).abs() + 1)
                }
                (LevelPoint::Club, LevelPoint::Club) => unreachable!("handled by a == b"),
            };
            d.push(v);
        }
    }
    let space = FiniteMetricSpace::from_flat(n, d)?;
    let provenance = json!({
        "construction": name,
        "k_min": params.k_min,
        "k_max": params.k_max,
        "input_points": m.len(),
    });
    Gadget::new(space, points, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn two_point(d: f64) -> FiniteMetricSpace<f64> {
        FiniteMetricSpace::validate(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn club_and_cross_level_distances() {
        let m = two_point(0.75);
        let g = lipschitz_gadget(
            &m,
            LevelGadgetParams {
                k_min: -1,
                k_max: 1,
            },
        )
        .unwrap();
        assert_eq!(g.len(), 7);
        let club = g.index_of(&LevelPoint::Club).unwrap();
        let at = |i, k| g.index_of(&LevelPoint::Level { i, k }).unwrap();
        assert_eq!(g.space.dist(at(0, 0), club), 5.0);
        assert_eq!(g.space.dist(at(1, 0), club), 5.0);
        assert_eq!(g.space.dist(at(0, 1), at(1, -1)), 20.0 + 0.375);
        assert_eq!(g.space.dist(at(0, 1), at(1, 1)), 1.0);
    }

    #[test]
    fn exact_mode_powers() {
        let m = FiniteMetricSpace::validate(vec![
            vec![Rational::from_i64(0), Rational::new(1, 4)],
            vec![Rational::new(1, 4), Rational::from_i64(0)],
        ])
        .unwrap();
        let g = lipschitz_gadget(
            &m,
            LevelGadgetParams {
                k_min: -2,
                k_max: 2,
            },
        )
        .unwrap();
        let at = |i, k| g.index_of(&LevelPoint::Level { i, k }).unwrap();
        assert_eq!(g.space.dist(at(0, -2), at(1, -2)), Rational::new(1, 16));
        assert_eq!(g.space.dist(at(0, 2), at(1, 2)), Rational::from_i64(1));
    }

    #[test]
    fn hl_levels() {
        let m = two_point(2.0);
        assert!(hl_gadget(
            &m,
            LevelGadgetParams {
                k_min: -1,
                k_max: 1
            }
        )
        .is_err());
        let g = hl_gadget(
            &m,
            LevelGadgetParams {
                k_min: -2,
                k_max: 0,
            },
        )
        .unwrap();
        let at = |i, k| g.index_of(&LevelPoint::Level { i, k }).unwrap();
        assert_eq!(g.space.dist(at(0, 0), at(1, 0)), 1.0);
        let club = g.index_of(&LevelPoint::Club).unwrap();
        assert_eq!(g.space.dist(at(0, -2), club), 17.0);
    }

    #[test]
    fn bad_levels() {
        let m = two_point(1.0);
        assert!(lipschitz_gadget(&m, LevelGadgetParams { k_min: 1, k_max: 2 }).is_err());
    }
}
