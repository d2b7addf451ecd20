//! HL(ε)-closeness and the net construction that turns an HL(ε) witness into
//! an upper bound on the Hausdorff–Lipschitz distance.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::search::{self, CostTable, Mode, SearchConfig};
use super::{
    lipschitz_constants, relation_distortion, Correspondence, DistanceError, DEFAULT_BUDGET,
};
use crate::scalar::{Scalar, TAU_EQ};
use crate::space::FiniteMetricSpace;

/// `exp(ε) - 1 + 2ε·exp(ε) + 4ε`: HL-distance below ε gives HL(φ₁(ε))-closeness.
pub fn phi1(eps: f64) -> f64 {
    eps.exp() - 1.0 + 2.0 * eps * eps.exp() + 4.0 * eps
}

/// `2ε + 2√ε + log(1 + max{ε, √ε}) + ε·max{1, ε + √ε}`.
///
/// ```
/// let v = metriclab::distances::phi2(1.0);
/// assert!((v - (6.0 + 2f64.ln())).abs() < 1e-12);
/// ```
pub fn phi2(eps: f64) -> f64 {
    let s = eps.sqrt();
    2.0 * eps + 2.0 * s + (1.0 + eps.max(s)).ln() + eps * (eps + s).max(1.0)
}

/// Smallest ε for which the distance pair `(a, b)` satisfies both HL(ε)
/// inequalities.
fn hl_need<S: Scalar>(a: S, b: S) -> S {
    let one = S::one();
    let up = (b - a) / a.max_of(one);
    let down = (a - b) / b.max_of(one);
    up.max_of(down).max_of(S::zero())
}

/// Outcome of an HL(ε)-closeness search.
#[derive(Debug, Clone, PartialEq)]
pub struct HlCloseness {
    pub witness: Option<Correspondence>,
    /// The search ran to the end: `None` proves that no witness exists.
    pub complete: bool,
    pub nodes: u64,
}

impl HlCloseness {
    pub fn to_json(&self) -> Value {
        json!({
            "close": self.witness.is_some(),
            "complete": self.complete,
            "witness": self.witness.as_ref().map(Correspondence::to_json),
            "nodes": self.nodes,
        })
    }
}

/// Looks for a correspondence witnessing that `m` and `n` are HL(ε)-close.
pub fn hl_close<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    eps: S,
) -> Result<HlCloseness, DistanceError> {
    hl_close_with_budget(m, n, eps, DEFAULT_BUDGET)
}

pub fn hl_close_with_budget<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    eps: S,
    budget: u64,
) -> Result<HlCloseness, DistanceError> {
    if !(eps > S::zero()) {
        return Err(DistanceError::NonPositiveEpsilon);
    }
    let table =
        CostTable::build(m, n, |a: S, b: S| Some(hl_need(a, b))).ok_or(DistanceError::SizeLimit)?;
    let cutoff = table.cutoff_at_most(eps);
    let result = search::run(
        &table,
        SearchConfig {
            mode: Mode::Correspondence,
            budget,
            cutoff,
            stop_at_first: true,
            required: Vec::new(),
            incumbent: Some((0..m.len() * n.len()).collect()),
        },
    );
    let witness = result.best.map(|(_, pairs)| {
        Correspondence::from_pairs(m.len(), n.len(), pairs.into_iter().map(|v| table.unpair(v)))
            .expect("search returns covers")
    });
    // Finding a witness settles the question.
    let complete = result.complete || witness.is_some();
    Ok(HlCloseness {
        witness,
        complete,
        nodes: result.nodes,
    })
}

/// Smallest ε for which `m` and `n` are HL(ε)-close, with its witness.
pub fn hl_min_epsilon<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    budget: u64,
) -> Result<(S, Correspondence, bool), DistanceError> {
    let table =
        CostTable::build(m, n, |a: S, b: S| Some(hl_need(a, b))).ok_or(DistanceError::SizeLimit)?;
    let result = search::run(
        &table,
        SearchConfig {
            mode: Mode::Correspondence,
            budget,
            cutoff: table.levels.len() as u32,
            stop_at_first: false,
            required: Vec::new(),
            incumbent: Some((0..m.len() * n.len()).collect()),
        },
    );
    let (rank, pairs) = result
        .best
        .ok_or(DistanceError::BudgetExhaustedWithoutBound)?;
    let corr =
        Correspondence::from_pairs(m.len(), n.len(), pairs.into_iter().map(|v| table.unpair(v)))
            .expect("search returns covers");
    Ok((
        table.level(rank).expect("rank within levels"),
        corr,
        result.complete,
    ))
}

/// Checks both HL(ε) inequalities for every pair of related pairs.
pub fn is_hl_witness<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    eps: S,
    r: &Correspondence,
) -> bool {
    if r.rows() != m.len() || r.cols() != n.len() {
        return false;
    }
    let pairs: Vec<_> = r.pairs().collect();
    pairs.iter().all(|&(i, j)| {
        pairs
            .iter()
            .all(|&(k, l)| hl_need(m.dist(i, k), n.dist(j, l)).approx_le(eps))
    })
}

/// A maximal δ-separated subset, built greedily in a seeded random order.
/// Distinct members are at distance `>= δ` and every point lies within `< δ`
/// of some member. Returned in increasing index order.
pub fn max_separated_net<S: Scalar>(m: &FiniteMetricSpace<S>, delta: S, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut net: Vec<usize> = Vec::new();
    for p in order {
        if net.iter().all(|&q| !(m.dist(p, q) < delta)) {
            net.push(p);
        }
    }
    net.sort_unstable();
    net
}

/// One inequality from the construction, evaluated on a concrete instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &'static str, value: f64, bound: f64) -> Self {
        let holds = value <= bound + TAU_EQ * bound.abs().max(1.0);
        BoundCheck {
            name,
            value,
            bound,
            holds,
        }
    }
}

/// The materialized construction behind [`phi2`].
#[derive(Debug, Clone, PartialEq)]
pub struct HlUpperReport {
    pub epsilon: f64,
    /// `ε + √ε`.
    pub delta: f64,
    /// Certified upper bound on the Hausdorff–Lipschitz distance.
    pub phi2: f64,
    /// Maximal δ-separated net in the first space.
    pub net: Vec<usize>,
    /// `selector[t]` is the point of the second space related to `net[t]`.
    pub selector: Vec<usize>,
    /// Correspondence between the first space and its net (by net position).
    pub first_correspondence: Correspondence,
    /// Correspondence between the second space and the selected points.
    pub second_correspondence: Correspondence,
    pub checks: Vec<BoundCheck>,
}

impl HlUpperReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "value": c.value, "bound": c.bound, "holds": c.holds}))
            .collect();
        json!({
            "value": self.phi2,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "net": self.net,
            "selector": self.selector,
            "checks": checks,
            "all_hold": self.all_hold(),
        })
    }
}

/// Builds the δ-net, the selector `r` and the two GH correspondences from an
/// HL(ε) witness, checks every intermediate inequality, and returns `φ₂(ε)`
/// inside the report.
pub fn hl_upper_from_witness<S: Scalar>(
    m: &FiniteMetricSpace<S>,
    n: &FiniteMetricSpace<S>,
    eps: S,
    r: &Correspondence,
    seed: u64,
) -> Result<HlUpperReport, DistanceError> {
    if !(eps > S::zero()) {
        return Err(DistanceError::NonPositiveEpsilon);
    }
    if !is_hl_witness(m, n, eps, r) {
        return Err(DistanceError::WitnessInvalid(
            "correspondence violates an HL inequality".into(),
        ));
    }
    let (mf, nf) = (m.to_f64(), n.to_f64());
    let e = eps.to_f64();
    let delta = e + e.sqrt();
    let net = max_separated_net(&mf, delta, seed);
    let selector: Vec<usize> = net
        .iter()
        .map(|&i| r.image(i).next().expect("correspondence is total"))
        .collect();

    let mut checks = Vec::new();

    let mut seen = vec![false; n.len()];
    let injective = selector
        .iter()
        .all(|&j| !std::mem::replace(&mut seen[j], true));
    checks.push(BoundCheck::new(
        "selector is injective",
        if injective { 0.0 } else { 1.0 },
        0.0,
    ));
    if !injective {
        return Err(DistanceError::WitnessInvalid(
            "selector is not injective".into(),
        ));
    }

    // First space to its net: each point goes to a net point within δ.
    let nearest = |p: usize| {
        (0..net.len())
            .min_by(|&a, &b| mf.dist(p, net[a]).total_cmp(&mf.dist(p, net[b])))
            .expect("net is non-empty")
    };
    let first_pairs: Vec<(usize, usize)> = (0..m.len()).map(|p| (p, nearest(p))).collect();
    let first_correspondence = Correspondence::from_pairs(m.len(), net.len(), first_pairs.clone())
        .map_err(|e| DistanceError::WitnessInvalid(e.to_string()))?;
    let net_d = mf.subspace(&net).expect("net points are distinct");
    let gh_first = relation_distortion(&first_pairs, &mf, &net_d)?.half();
    checks.push(BoundCheck::new("GH(first, net) <= delta", gh_first, delta));

    // Second space to the selected points: j R^-1 i, i near net[t], j -> r(net[t]).
    let reach = delta + e * delta.max(1.0);
    let net_e = nf.subspace(&selector).expect("selector is injective");
    let mut second_pairs = Vec::new();
    let mut worst_reach: f64 = 0.0;
    for j in 0..n.len() {
        let i = (0..m.len())
            .find(|&i| r.contains(i, j))
            .expect("correspondence is total");
        let t = nearest(i);
        worst_reach = worst_reach.max(nf.dist(j, selector[t]));
        second_pairs.push((j, t));
    }
    for t in 0..net.len() {
        if !second_pairs.contains(&(selector[t], t)) {
            second_pairs.push((selector[t], t));
        }
    }
    checks.push(BoundCheck::new(
        "second space within reach of selected points",
        worst_reach,
        reach,
    ));
    let second_correspondence =
        Correspondence::from_pairs(n.len(), net.len(), second_pairs.clone())
            .map_err(|e| DistanceError::WitnessInvalid(e.to_string()))?;
    let gh_second = relation_distortion(&second_pairs, &nf, &net_e)?.half();
    checks.push(BoundCheck::new(
        "GH(second, selected) <= delta + eps*max(1, delta)",
        gh_second,
        reach,
    ));

    let identity: Vec<usize> = (0..net.len()).collect();
    let (lip, lip_inv) = lipschitz_constants(&net_d, &net_e, &identity)?;
    let lip_bound = (1.0 + e).max(1.0 + e / delta);
    let lip_inv_bound = 1.0 + e.max(e.sqrt());
    checks.push(BoundCheck::new(
        "Lip(r) <= max(1+eps, 1+eps/delta)",
        lip,
        lip_bound,
    ));
    checks.push(BoundCheck::new(
        "Lip(r^-1) <= 1 + max(eps, sqrt eps)",
        lip_inv,
        lip_inv_bound,
    ));

    let total = delta + lip_inv_bound.max(lip_bound).ln() + reach;
    let phi = phi2(e);
    checks.push(BoundCheck::new(
        "sum of the three bounds <= phi2",
        total,
        phi,
    ));
    checks.push(BoundCheck::new(
        "chain through the nets <= phi2",
        gh_first + lip.max(lip_inv).ln() + gh_second,
        phi,
    ));

    Ok(HlUpperReport {
        epsilon: e,
        delta,
        phi2: phi,
        net,
        selector,
        first_correspondence,
        second_correspondence,
        checks,
    })
}
