//! Hausdorff, Gromov–Hausdorff, Lipschitz and HL-closeness computations
//! between finite metric spaces.
//!
//! All solvers are exact when they report `exact = true`; otherwise the
//! returned value is an upper bound attained by the returned witness. The
//! searches are sequential and deterministic: the same inputs always give the
//! same value and the same witness.

mod correspondence;
mod hl;
pub(crate) mod search;

use serde_json::{json, Value};

pub(crate) use correspondence::is_permutation;
pub use correspondence::{Correspondence, CorrespondenceError};
pub use hl::{
    hl_close, hl_close_with_budget, hl_min_epsilon, hl_upper_from_witness, is_hl_witness,
    max_separated_net, phi1, phi2, BoundCheck, HlCloseness, HlUpperReport,
};

use crate::scalar::Scalar;
use crate::space::FiniteMetricSpace;
use search::{CostTable, Mode, SearchConfig};

/// Node budget used when the caller does not give one.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Largest space size for which a full correspondence search is expected to
/// finish within the default budget on generic inputs.
pub const CORRESPONDENCE_EXHAUSTIVE_LIMIT: usize = 7;
/// Same for bijection searches.
pub const BIJECTION_EXHAUSTIVE_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistanceError {
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("point index {index} out of range for a {n}-point space")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation is {rows}x{cols} but the spaces have {na} and {nb} points")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        na: usize,
        nb: usize,
    },
    #[error("spaces have different sizes ({na} vs {nb})")]
    SizeMismatch { na: usize, nb: usize },
    #[error("too many distinct distance values to tabulate")]
    SizeLimit,
    #[error("witness does not satisfy the required inequalities: {0}")]
    WitnessInvalid(String),
    #[error("node budget exhausted before any correspondence was evaluated")]
    BudgetExhaustedWithoutBound,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
}

/// What a distance certificate exhibits.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Correspondence(Correspondence),
    /// `perm[i]` is the image of point `i`.
    Bijection(Vec<usize>),
    /// A possibly partial relation, as a list of pairs.
    PairMap(Vec<(usize, usize)>),
}

impl Witness {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match self {
            Witness::Correspondence(c) => c.pairs().collect(),
            Witness::Bijection(p) => p.iter().copied().enumerate().collect(),
            Witness::PairMap(p) => p.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::Correspondence(c) => c.to_json(),
            Witness::Bijection(p) => json!({"kind": "bijection", "perm": p}),
            Witness::PairMap(p) => {
                let pairs: Vec<Value> = p.iter().map(|&(i, j)| json!([i, j])).collect();
                json!({"kind": "pair_map", "pairs": pairs})
            }
        }
    }
}

/// A computed distance together with the object that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCertificate<S> {
    pub value: S,
    pub witness: Witness,
    /// True when produced by a search that ran to completion.
    pub exact: bool,
    pub nodes: u64,
}

impl<S: Scalar> DistanceCertificate<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value.to_json(),
            "exact": self.exact,
            "witness": self.witness.to_json(),
            "nodes": self.nodes,
        })
    }

    /// Half the distortion of the witness, recomputed from scratch.
    pub fn reevaluate(
        &self,
        m: &FiniteMetricSpace<S>,
        n: &FiniteMetricSpace<S>,
    ) -> Result<S, DistanceError> {
        Ok(relation_distortion(&self.witness.pairs(), m, n)?.half())
    }
}

/// Hausdorff distance between the subsets `a` and `b` of `m`.
pub fn hausdorff<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    a: &[usize],
    b: &[usize],
) -> Result<S, DistanceError> {
    if a.is_empty() || b.is_empty() {
        return Err(DistanceError::EmptySubset);
    }
    if let Some(&index) = a.iter().chain(b).find(|&&p| p >= m.len()) {
        return Err(DistanceError::IndexOutOfRange { index, n: m.len() });
    }
    let one_sided = |from: &[usize], to: &[usize]| {
        from.iter()
            .map(|&x| {
                to.iter()
                    .map(|&y| m.dist(x, y))
                    .reduce(S::min_of)
                    .expect("non-empty")
            })
            .fold(S::zero(), S::max_of)
    };
    Ok(one_sided(a, b).max_of(one_sided(b, a)))
}

/// `sup |d_M(m,m') - d_N(n,n')|` over related pairs `(m,n)`, `(m',n')`.
pub fn distortion<S: Scalar>(
    r: &Correspondence,
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<S, DistanceError> {
    if r.rows() != m.len() || r.cols() != n.len() {
        return Err(DistanceError::DimensionMismatch {
            rows: r.rows(),
            cols: r.cols(),
            na: m.len(),
            nb: n.len(),
        });
    }
    let pairs: Vec<_> = r.pairs().collect();
    relation_distortion(&pairs, m, n)
}

/// Distortion of an arbitrary (possibly partial) list of pairs.
pub fn relation_distortion<S: Scalar>(
    pairs: &[(usize, usize)],
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<S, DistanceError> {
    for &(i, j) in pairs {
        if i >= m.len() {
            return Err(DistanceError::IndexOutOfRange {
                index: i,
                n: m.len(),
            });
        }
        if j >= n.len() {
            return Err(DistanceError::IndexOutOfRange {
                index: j,
                n: n.len(),
            });
        }
    }
    let mut worst = S::zero();
    for &(i, j) in pairs {
        for &(k, l) in pairs {
            worst = worst.max_of((m.dist(i, k) - n.dist(j, l)).abs());
        }
    }
    Ok(worst)
}

/// Constraint on the GH value a search should accept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GhBound<S> {
    /// Value strictly below the bound.
    Below(S),
    /// Value at most the bound (within tolerance in float mode).
    AtMost(S),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhSearchOutcome<S> {
    /// Best witness found that satisfies the bound.
    pub best: Option<DistanceCertificate<S>>,
    /// The search space was exhausted: `best` is optimal among relations
    /// satisfying the bound, and `None` proves that no such relation exists.
    pub complete: bool,
    pub nodes: u64,
}

/// Configurable Gromov–Hausdorff search.
///
/// ```
/// use metriclab::{FiniteMetricSpace, distances::{GhSearch, GhBound}};
/// let a = FiniteMetricSpace::validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
/// let b = FiniteMetricSpace::validate(vec![vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
/// let out = GhSearch::new(&a, &b).bound(GhBound::Below(0.9)).run().unwrap();
/// assert!(out.complete && out.best.is_none());
/// ```
pub struct GhSearch<'a, S> {
    m: &'a FiniteMetricSpace<S>,
    n: &'a FiniteMetricSpace<S>,
    budget: u64,
    bound: Option<GhBound<S>>,
    first_only: bool,
    bijective: bool,
    required: Vec<(usize, usize)>,
}

impl<'a, S: Scalar> GhSearch<'a, S> {
    pub fn new(m: &'a FiniteMetricSpace<S>, n: &'a FiniteMetricSpace<S>) -> Self {
        GhSearch {
            m,
            n,
            budget: DEFAULT_BUDGET,
            bound: None,
            first_only: false,
            bijective: false,
            required: Vec::new(),
        }
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    pub fn bound(mut self, bound: GhBound<S>) -> Self {
        self.bound = Some(bound);
        self
    }

    /// Stop at the first relation satisfying the bound.
    pub fn first_only(mut self) -> Self {
        self.first_only = true;
        self
    }

    /// Restrict to bijections.
    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    /// Only consider relations containing `(i, j)`.
    pub fn require(mut self, i: usize, j: usize) -> Self {
        self.required.push((i, j));
        self
    }

    pub fn run(self) -> Result<GhSearchOutcome<S>, DistanceError> {
        let (na, nb) = (self.m.len(), self.n.len());
        if self.bijective && na != nb {
            return Err(DistanceError::SizeMismatch { na, nb });
        }
        for &(i, j) in &self.required {
            if i >= na {
                return Err(DistanceError::IndexOutOfRange { index: i, n: na });
            }
            if j >= nb {
                return Err(DistanceError::IndexOutOfRange { index: j, n: nb });
            }
        }
        let table = CostTable::build(self.m, self.n, |a: S, b: S| Some((a - b).abs()))
            .ok_or(DistanceError::SizeLimit)?;
        let cutoff = match self.bound {
            None => table.levels.len() as u32,
            Some(GhBound::Below(t)) => table.cutoff_below(t + t),
            Some(GhBound::AtMost(t)) => table.cutoff_at_most(t + t),
        };
        let incumbent = if self.bijective {
            self.required
                .is_empty()
                .then(|| (0..na).map(|i| table.pair(i, i)).collect())
        } else {
            Some((0..na * nb).collect())
        };
        let mode = if self.bijective {
            Mode::Bijection
        } else {
            Mode::Correspondence
        };
        let result = search::run(
            &table,
            SearchConfig {
                mode,
                budget: self.budget,
                cutoff,
                stop_at_first: self.first_only,
                required: self
                    .required
                    .iter()
                    .map(|&(i, j)| table.pair(i, j))
                    .collect(),
                incumbent,
            },
        );
        let best = result.best.map(|(rank, pairs)| {
            let pairs: Vec<(usize, usize)> = pairs.iter().map(|&v| table.unpair(v)).collect();
            let witness = if self.bijective {
                let mut perm = vec![0; na];
                for &(i, j) in &pairs {
                    perm[i] = j;
                }
                Witness::Bijection(perm)
            } else {
                Witness::Correspondence(
                    Correspondence::from_pairs(na, nb, pairs).expect("search returns covers"),
                )
            };
            DistanceCertificate {
                value: table.level(rank).expect("rank within levels").half(),
                witness,
                exact: result.complete,
                nodes: result.nodes,
            }
        });
        Ok(GhSearchOutcome {
            best,
            complete: result.complete,
            nodes: result.nodes,
        })
    }
}

/// Gromov–Hausdorff distance: half the minimum distortion over all
/// correspondences.
pub fn gh_exact<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    budget: Option<u64>,
) -> Result<DistanceCertificate<S>, DistanceError> {
    GhSearch::new(m, n)
        .budget(budget.unwrap_or(DEFAULT_BUDGET))
        .run()?
        .best
        .ok_or(DistanceError::BudgetExhaustedWithoutBound)
}

/// Half the minimum over bijections of the largest pairwise distance change.
pub fn gh_bijection<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<DistanceCertificate<S>, DistanceError> {
    gh_bijection_with_budget(m, n, DEFAULT_BUDGET)
}

pub fn gh_bijection_with_budget<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    budget: u64,
) -> Result<DistanceCertificate<S>, DistanceError> {
    GhSearch::new(m, n)
        .bijective()
        .budget(budget)
        .run()?
        .best
        .ok_or(DistanceError::BudgetExhaustedWithoutBound)
}

/// Result of a Lipschitz-distance computation.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzCertificate<S> {
    /// `min_T max{Lip(T), Lip(T^-1)}`; `None` when no bijection exists.
    pub dilation: Option<S>,
    /// `log` of the dilation, `+inf` when there is no bijection.
    pub value: f64,
    pub witness: Option<Vec<usize>>,
    pub exact: bool,
    pub nodes: u64,
}

impl<S: Scalar> LipschitzCertificate<S> {
    pub fn to_json(&self) -> Value {
        let value = if self.value.is_finite() {
            json!(self.value)
        } else {
            json!("inf")
        };
        json!({
            "value": value,
            "dilation": self.dilation.map(Scalar::to_json),
            "exact": self.exact,
            "witness": self.witness.as_ref().map(|p| json!({"kind": "bijection", "perm": p})),
            "nodes": self.nodes,
        })
    }
}

/// `(Lip(T), Lip(T^-1))` for the bijection `i -> perm[i]`.
pub fn lipschitz_constants<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    perm: &[usize],
) -> Result<(S, S), DistanceError> {
    if m.len() != n.len() || perm.len() != m.len() {
        return Err(DistanceError::SizeMismatch {
            na: m.len(),
            nb: n.len(),
        });
    }
    if !correspondence::is_permutation(perm) {
        return Err(DistanceError::WitnessInvalid("not a permutation".into()));
    }
    let mut forward = S::one();
    let mut backward = S::one();
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            let (a, b) = (m.dist(i, j), n.dist(perm[i], perm[j]));
            forward = forward.max_of(b / a);
            backward = backward.max_of(a / b);
        }
    }
    Ok((forward, backward))
}

/// Lipschitz distance `min_T log max{Lip(T), Lip(T^-1)}`; infinite when the
/// sizes differ.
pub fn lipschitz_exact<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
) -> Result<LipschitzCertificate<S>, DistanceError> {
    lipschitz_with_budget(m, n, DEFAULT_BUDGET)
}

pub fn lipschitz_with_budget<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    budget: u64,
) -> Result<LipschitzCertificate<S>, DistanceError> {
    if m.len() != n.len() {
        return Ok(LipschitzCertificate {
            dilation: None,
            value: f64::INFINITY,
            witness: None,
            exact: true,
            nodes: 0,
        });
    }
    let zero = S::zero();
    let table = CostTable::build(m, n, |a: S, b: S| {
        if a == zero && b == zero {
            Some(S::one())
        } else if a == zero || b == zero {
            None
        } else {
            Some((b / a).max_of(a / b))
        }
    })
    .ok_or(DistanceError::SizeLimit)?;
    let result = search::run(
        &table,
        SearchConfig {
            mode: Mode::Bijection,
            budget,
            cutoff: table.levels.len() as u32,
            stop_at_first: false,
            required: Vec::new(),
            incumbent: Some((0..m.len()).map(|i| table.pair(i, i)).collect()),
        },
    );
    let (rank, pairs) = result
        .best
        .ok_or(DistanceError::BudgetExhaustedWithoutBound)?;
    let mut perm = vec![0; m.len()];
    for v in pairs {
        let (i, j) = table.unpair(v);
        perm[i] = j;
    }
    let dilation = table.level(rank).expect("rank within levels");
    Ok(LipschitzCertificate {
        dilation: Some(dilation),
        value: dilation.to_f64().ln(),
        witness: Some(perm),
        exact: result.complete,
        nodes: result.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_rational::Ratio;

    fn two_point<S: Scalar>(d: S) -> FiniteMetricSpace<S> {
        FiniteMetricSpace::validate(vec![vec![S::zero(), d], vec![d, S::zero()]]).unwrap()
    }

    fn path3() -> FiniteMetricSpace<f64> {
        FiniteMetricSpace::validate(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn hausdorff_basics() {
        let m = path3();
        assert_eq!(hausdorff(&m, &[0, 2], &[0, 2]).unwrap(), 0.0);
        assert_eq!(hausdorff(&m, &[0], &[2]).unwrap(), 2.0);
        assert_eq!(hausdorff(&m, &[0, 1, 2], &[1]).unwrap(), 1.0);
        assert_eq!(
            hausdorff(&m, &[], &[1]).unwrap_err(),
            DistanceError::EmptySubset
        );
        assert!(matches!(
            hausdorff(&m, &[7], &[1]),
            Err(DistanceError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn distortion_basics() {
        let m = path3();
        assert_eq!(
            distortion(&Correspondence::identity(3), &m, &m).unwrap(),
            0.0
        );
        let (a, b) = (two_point(1.0), two_point(3.0));
        // Full relation: pair-pairs give |1-3|, |0-3|, |1-0|, |0-0|.
        assert_eq!(
            distortion(&Correspondence::full(2, 2), &a, &b).unwrap(),
            3.0
        );
        assert!(matches!(
            distortion(&Correspondence::identity(3), &a, &b),
            Err(DistanceError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gh_two_point_pair() {
        let (a, b) = (
            two_point(Rational::from_i64(1)),
            two_point(Rational::from_i64(3)),
        );
        let cert = gh_exact(&a, &b, None).unwrap();
        assert_eq!(cert.value, Rational::from_i64(1));
        assert!(cert.exact);
        assert_eq!(cert.reevaluate(&a, &b).unwrap(), cert.value);
    }

    #[test]
    fn gh_identical_is_zero() {
        let m = path3();
        let cert = gh_exact(&m, &m, None).unwrap();
        assert_eq!(cert.value, 0.0);
        assert!(cert.exact);
        let bij = gh_bijection(&m, &m).unwrap();
        assert_eq!(bij.value, 0.0);
    }

    #[test]
    fn gh_bijection_equilateral() {
        let a = FiniteMetricSpace::equilateral(3, Ratio::new(1i128, 1)).unwrap();
        let b = FiniteMetricSpace::equilateral(3, Ratio::new(2i128, 1)).unwrap();
        let cert = gh_bijection(&a, &b).unwrap();
        assert_eq!(cert.value, Ratio::new(1, 2));
        assert!(matches!(cert.witness, Witness::Bijection(_)));
        assert!(matches!(
            gh_bijection(&a, &FiniteMetricSpace::singleton()),
            Err(DistanceError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn gh_against_singleton_is_half_diameter() {
        let m = path3();
        let cert = gh_exact(&m, &FiniteMetricSpace::singleton(), None).unwrap();
        assert_eq!(cert.value, 1.0);
    }

    #[test]
    fn bounded_search_decides() {
        let (a, b) = (two_point(1.0), two_point(3.0));
        let none = GhSearch::new(&a, &b)
            .bound(GhBound::Below(1.0))
            .run()
            .unwrap();
        assert!(none.complete && none.best.is_none());
        let some = GhSearch::new(&a, &b)
            .bound(GhBound::AtMost(1.0))
            .run()
            .unwrap();
        assert_eq!(some.best.unwrap().value, 1.0);
    }

    #[test]
    fn required_pairs_are_respected() {
        let m = path3();
        // Forcing the endpoint onto the middle point costs |2 - 1| somewhere.
        let out = GhSearch::new(&m, &m).require(0, 1).run().unwrap();
        let cert = out.best.unwrap();
        assert!(cert.witness.pairs().contains(&(0, 1)));
        assert!(cert.value > 0.0);
    }

    #[test]
    fn lipschitz_basics() {
        let m = path3();
        let cert = lipschitz_exact(&m, &m).unwrap();
        assert_eq!(cert.value, 0.0);
        let e = std::f64::consts::E;
        let cert = lipschitz_exact(&two_point(1.0), &two_point(e)).unwrap();
        assert!((cert.value - 1.0).abs() < 1e-12);
        let cert = lipschitz_exact(&m, &two_point(1.0)).unwrap();
        assert!(cert.value.is_infinite());
        assert_eq!(cert.to_json()["value"], json!("inf"));
    }

    #[test]
    fn lipschitz_constants_of_identity() {
        let m = path3();
        let (f, b) = lipschitz_constants(&m, &m.scale(2.0), &[0, 1, 2]).unwrap();
        assert_eq!((f, b), (2.0, 0.5f64.max(1.0)));
    }
}
