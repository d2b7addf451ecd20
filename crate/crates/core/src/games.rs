//! Finite-depth distance games.
//!
//! A position is a pair of equal-length tuples `(xs, ys)`. Each round Player I
//! appends a point of either space to its tuple and Player II answers with a
//! point of the other space. After the last round Player I is paid the cost
//! `sup |d(x_a, x_b) − p(y_a, y_b)| / 2` of the resulting relation; Player II
//! wins the threshold-`ε` game when that cost stays below `ε`.
//!
//! ```
//! use metriclab::{FiniteMetricSpace, games};
//! let m = FiniteMetricSpace::validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
//! let n = FiniteMetricSpace::validate(vec![vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
//! assert_eq!(games::game_value(&m, &n, &[], &[], 4).unwrap(), 1.0);
//! ```

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::distances::{gh_exact, DistanceError};
use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;

/// Largest `|M| + |N|` accepted by [`duality_check`].
pub const DUALITY_SIZE_LIMIT: usize = 8;
/// Positions are stored as sets of index pairs, one bit per pair.
const PAIR_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GameError {
    #[error("tuples have different lengths: {xs} and {ys}")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("spaces of sizes {na} and {nb} exceed the game solver limit")]
    SizeLimit { na: usize, nb: usize },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// A node of the game tree.
#[derive(Debug, Clone, PartialEq)]
pub struct GamePosition<S> {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    /// Remaining rounds.
    pub depth: u32,
    pub eps: S,
}

impl<S: Scalar> GamePosition<S> {
    pub fn start(depth: u32, eps: S) -> Self {
        GamePosition {
            xs: Vec::new(),
            ys: Vec::new(),
            depth,
            eps,
        }
    }

    /// Whether Player II wins from this position.
    pub fn player_two_wins(
        &self,
        m: &FiniteMetricSpace<S>,
        n: &FiniteMetricSpace<S>,
    ) -> Result<bool, GameError> {
        if !(self.eps > S::zero()) {
            return Err(GameError::NonPositiveEpsilon);
        }
        Ok(game_value(m, n, &self.xs, &self.ys, self.depth)? < self.eps)
    }
}

/// `sup |d(x_a, x_b) − p(y_a, y_b)| / 2` over all index pairs `a, b`; zero for
/// empty tuples.
pub fn partial_cost<S: Scalar>(
    xs: &[usize],
    ys: &[usize],
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<S, GameError> {
    check_tuples(xs, ys, m, n)?;
    let mut worst = S::zero();
    for a in 0..xs.len() {
        for b in (a + 1)..xs.len() {
            worst = worst.max_of((m.dist(xs[a], xs[b]) - n.dist(ys[a], ys[b])).abs());
        }
    }
    Ok(worst.half())
}

fn check_tuples<S: Scalar>(
    xs: &[usize],
    ys: &[usize],
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<(), GameError> {
    if xs.len() != ys.len() {
        return Err(GameError::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    for (tuple, len) in [(xs, m.len()), (ys, n.len())] {
        if let Some(&index) = tuple.iter().find(|&&i| i >= len) {
            return Err(GameError::IndexOutOfRange { index, n: len });
        }
    }
    Ok(())
}

/// Memoizing minimax solver for one pair of spaces.
///
/// Repeated pairs never change the cost, so positions are keyed by the set of
/// pairs played together with the remaining depth.
pub struct GameSolver<'a, S> {
    m: &'a FiniteMetricSpace<S>,
    n: &'a FiniteMetricSpace<S>,
    values: HashMap<(u64, u32), S>,
    ordinal_values: HashMap<(u64, u32), S>,
    costs: HashMap<u64, S>,
}

impl<'a, S: Scalar> GameSolver<'a, S> {
    pub fn new(
        m: &'a FiniteMetricSpace<S>,
        n: &'a FiniteMetricSpace<S>,
    ) -> Result<Self, GameError> {
        if m.len() * n.len() > PAIR_BITS {
            return Err(GameError::SizeLimit {
                na: m.len(),
                nb: n.len(),
            });
        }
        Ok(GameSolver {
            m,
            n,
            values: HashMap::new(),
            ordinal_values: HashMap::new(),
            costs: HashMap::new(),
        })
    }

    fn bit(&self, x: usize, y: usize) -> u64 {
        1 << (x * self.n.len() + y)
    }

    fn position(&self, xs: &[usize], ys: &[usize]) -> Result<u64, GameError> {
        check_tuples(xs, ys, self.m, self.n)?;
        Ok(xs
            .iter()
            .zip(ys)
            .fold(0, |set, (&x, &y)| set | self.bit(x, y)))
    }

    fn cost(&mut self, set: u64) -> S {
        if let Some(&c) = self.costs.get(&set) {
            return c;
        }
        let nb = self.n.len();
        let pairs: Vec<(usize, usize)> = (0..PAIR_BITS)
            .filter(|b| set >> b & 1 == 1)
            .map(|b| (b / nb, b % nb))
            .collect();
        let mut worst = S::zero();
        for (a, &(x, y)) in pairs.iter().enumerate() {
            for &(x2, y2) in &pairs[a + 1..] {
                worst = worst.max_of((self.m.dist(x, x2) - self.n.dist(y, y2)).abs());
            }
        }
        let c = worst.half();
        self.costs.insert(set, c);
        c
    }

    /// Every `(x, y)` reachable in one round, grouped by Player I's move.
    fn rounds(&self) -> Vec<Vec<(usize, usize)>> {
        let (na, nb) = (self.m.len(), self.n.len());
        let left = (0..na).map(|x| (0..nb).map(|y| (x, y)).collect());
        let right = (0..nb).map(|y| (0..na).map(|x| (x, y)).collect());
        left.chain(right).collect()
    }

    fn value_of(&mut self, set: u64, depth: u32) -> S {
        if depth == 0 {
            return self.cost(set);
        }
        if let Some(&v) = self.values.get(&(set, depth)) {
            return v;
        }
        let mut best: Option<S> = None;
        for answers in self.rounds() {
            let mut reply: Option<S> = None;
            for (x, y) in answers {
                let v = self.value_of(set | self.bit(x, y), depth - 1);
                reply = Some(reply.map_or(v, |r| r.min_of(v)));
            }
            let reply = reply.expect("spaces are non-empty");
            best = Some(best.map_or(reply, |b| b.max_of(reply)));
        }
        let v = best.expect("spaces are non-empty");
        self.values.insert((set, depth), v);
        v
    }

    /// The minimax value of the position with `depth` rounds left.
    pub fn value(&mut self, xs: &[usize], ys: &[usize], depth: u32) -> Result<S, GameError> {
        let set = self.position(xs, ys)?;
        Ok(self.value_of(set, depth))
    }

    fn ordinal_value_of(&mut self, set: u64, depth: u32) -> S {
        if depth == 0 {
            return self.cost(set);
        }
        if let Some(&v) = self.ordinal_values.get(&(set, depth)) {
            return v;
        }
        let mut best: Option<S> = None;
        for next in 0..depth {
            for answers in self.rounds() {
                let mut reply: Option<S> = None;
                for (x, y) in answers {
                    let v = self.ordinal_value_of(set | self.bit(x, y), next);
                    reply = Some(reply.map_or(v, |r| r.min_of(v)));
                }
                let reply = reply.expect("spaces are non-empty");
                best = Some(best.map_or(reply, |b| b.max_of(reply)));
            }
        }
        let v = best.expect("spaces are non-empty");
        self.ordinal_values.insert((set, depth), v);
        v
    }

    /// The value when Player I may lower the remaining depth to any smaller
    /// number after each move, instead of decrementing it by one.
    pub fn ordinal_value(
        &mut self,
        xs: &[usize],
        ys: &[usize],
        depth: u32,
    ) -> Result<S, GameError> {
        let set = self.position(xs, ys)?;
        Ok(self.ordinal_value_of(set, depth))
    }

    /// Number of memoized positions.
    pub fn expanded(&self) -> usize {
        self.values.len()
    }

    /// Checks `v(pos, k−1) <= v(pos, k)` and `cost(pos) <= v(pos, k)` at every
    /// position expanded so far. Returns the number of violations.
    pub fn monotonicity_violations(&mut self) -> usize {
        let mut entries: Vec<((u64, u32), S)> = self.values.iter().map(|(k, v)| (*k, *v)).collect();
        entries.sort_by_key(|(k, _)| *k);
        entries
            .into_iter()
            .filter(|&((set, depth), v)| {
                let below = self.value_of(set, depth - 1);
                let cost = self.cost(set);
                !(below.approx_le(v) && cost.approx_le(v))
            })
            .count()
    }
}

/// The minimax value of the game started at `(xs, ys)` with `depth` rounds.
pub fn game_value<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    xs: &[usize],
    ys: &[usize],
    depth: u32,
) -> Result<S, GameError> {
    GameSolver::new(m, n)?.value(xs, ys, depth)
}

/// Whether Player II wins the threshold-`eps` game of `depth` rounds from the
/// empty position.
pub fn game_winner<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    eps: S,
    depth: u32,
) -> Result<bool, GameError> {
    GamePosition::start(depth, eps).player_two_wins(m, n)
}

/// Game values from the empty position compared with the Gromov–Hausdorff
/// distance.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport<S> {
    /// Value at depth `|M| + |N| + 1`.
    pub stabilized_value: S,
    /// First depth whose value equals the stabilized value.
    pub stabilization_depth: u32,
    /// Values at depths `0..=|M| + |N| + 1`.
    pub values: Vec<S>,
    /// The last two depths agree.
    pub stable: bool,
    pub gh: S,
    pub matches_gh: bool,
    /// Positions where the value decreased with depth or fell below the cost.
    pub monotonicity_violations: usize,
    pub expanded: usize,
}

impl<S: Scalar> DualityReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.stabilized_value.to_json(),
            "depth": self.stabilization_depth,
            "stable": self.stable,
            "values": self.values.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "gh": self.gh.to_json(),
            "matchesGH": self.matches_gh,
            "monotonicityViolations": self.monotonicity_violations,
            "expanded": self.expanded,
        })
    }
}

/// Expands the game from the empty position to depth `|M| + |N| + 1`.
///
/// After `|M| + |N|` rounds Player I can have named every point, so the
/// value can be compared with the Gromov–Hausdorff distance.
pub fn duality_check<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<DualityReport<S>, GameError> {
    if m.len() + n.len() > DUALITY_SIZE_LIMIT {
        return Err(GameError::SizeLimit {
            na: m.len(),
            nb: n.len(),
        });
    }
    let mut solver = GameSolver::new(m, n)?;
    let full = (m.len() + n.len()) as u32 + 1;
    let values: Vec<S> = (0..=full).map(|k| solver.value_of(0, k)).collect();
    let stabilized_value = values[full as usize];
    let stabilization_depth = values
        .iter()
        .position(|v| v.approx_eq(stabilized_value))
        .expect("last value matches") as u32;
    let gh = gh_exact(m, n, None)?.value;
    let monotonicity_violations = solver.monotonicity_violations();
    Ok(DualityReport {
        stabilized_value,
        stabilization_depth,
        stable: values[full as usize - 1].approx_eq(stabilized_value),
        values,
        gh,
        matches_gh: gh.approx_eq(stabilized_value),
        monotonicity_violations,
        expanded: solver.expanded(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn two(d: f64) -> FiniteMetricSpace<f64> {
        FiniteMetricSpace::validate(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn partial_cost_examples() {
        let (m, n) = (two(1.0), two(3.0));
        assert_eq!(partial_cost(&[], &[], &m, &n).unwrap(), 0.0);
        assert_eq!(partial_cost(&[0, 1], &[0, 1], &m, &m).unwrap(), 0.0);
        assert_eq!(partial_cost(&[0, 1], &[0, 1], &m, &n).unwrap(), 1.0);
        assert!(matches!(
            partial_cost(&[0], &[], &m, &n),
            Err(GameError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn depth_zero_is_cost() {
        let (m, n) = (two(1.0), two(3.0));
        assert_eq!(game_value(&m, &n, &[0, 1], &[0, 1], 0).unwrap(), 1.0);
        assert_eq!(game_value(&m, &n, &[0, 1], &[0, 0], 0).unwrap(), 0.5);
    }

    #[test]
    fn two_point_duality() {
        let (m, n) = (two(1.0), two(3.0));
        assert_eq!(game_value(&m, &n, &[], &[], 4).unwrap(), 1.0);
        let report = duality_check(&m, &n).unwrap();
        assert!(report.matches_gh && report.stable);
        assert_eq!(report.stabilized_value, 1.0);
        assert_eq!(report.monotonicity_violations, 0);
        assert!(!game_winner(&m, &n, 0.9, 4).unwrap());
        assert!(game_winner(&m, &n, 1.6, 4).unwrap());
    }

    #[test]
    fn mirror_strategy() {
        let m = FiniteMetricSpace::validate(vec![
            vec![
                Rational::from_i64(0),
                Rational::from_i64(2),
                Rational::from_i64(3),
            ],
            vec![
                Rational::from_i64(2),
                Rational::from_i64(0),
                Rational::from_i64(4),
            ],
            vec![
                Rational::from_i64(3),
                Rational::from_i64(4),
                Rational::from_i64(0),
            ],
        ])
        .unwrap();
        let report = duality_check(&m, &m).unwrap();
        assert_eq!(report.stabilized_value, Rational::from_i64(0));
        assert_eq!(report.stabilization_depth, 0);
        assert!(game_winner(&m, &m, Rational::new(1, 100), 3).unwrap());
    }

    #[test]
    fn ordinal_rule_agrees() {
        let (m, n) = (two(1.0), two(3.0));
        let mut solver = GameSolver::new(&m, &n).unwrap();
        for k in 0..4 {
            assert_eq!(
                solver.value(&[], &[], k).unwrap(),
                solver.ordinal_value(&[], &[], k).unwrap()
            );
        }
    }

    #[test]
    fn errors() {
        let m = two(1.0);
        assert_eq!(
            game_winner(&m, &m, 0.0, 1).unwrap_err(),
            GameError::NonPositiveEpsilon
        );
        let big = FiniteMetricSpace::equilateral(5, 1.0).unwrap();
        assert!(matches!(
            duality_check(&big, &big),
            Err(GameError::SizeLimit { .. })
        ));
    }
}
