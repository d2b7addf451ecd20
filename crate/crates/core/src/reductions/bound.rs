use std::fmt;

use serde_json::json;

use super::{check_size, Gadget, ReductionError};
use crate::distances::Correspondence;
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;
use crate::space::{ClassBounds, FiniteMetricSpace};

/// Cap applied to every distance of the bounded gadget.
const CAP: i64 = 3;

/// A point of the bounded gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundPoint {
    /// The input point `m_i`.
    Original(usize),
    /// `p_{i,j,k}` on the path between `m_i` and `m_j`, `i < j`.
    Path { i: usize, j: usize, k: i64 },
}

impl fmt::Display for BoundPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundPoint::Original(i) => write!(f, "m{i}"),
            BoundPoint::Path { i, j, k } => write!(f, "p({i},{j},{k})"),
        }
    }
}

/// The largest `K` with `K < d/2`; the path indices are `-K..=K`.
pub fn half_index_range<S: Scalar>(d: S) -> i64 {
    let h = d.half();
    let f = h.floor_i64();
    if S::from_i64(f).approx_eq(h) {
        f - 1
    } else {
        f
    }
}

fn path_points<S: Scalar>(m: &FiniteMetricSpace<S>) -> Vec<BoundPoint> {
    let mut points: Vec<BoundPoint> = (0..m.len()).map(BoundPoint::Original).collect();
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            let r = half_index_range(m.dist(i, j));
            points.extend((-r..=r).map(|k| BoundPoint::Path { i, j, k }));
        }
    }
    points
}

fn check_input<S: Scalar>(m: &FiniteMetricSpace<S>) -> Result<Vec<BoundPoint>, ReductionError> {
    if !m.in_class(&ClassBounds::lower(S::from_i64(5))) {
        return Err(ReductionError::InputNotInM5);
    }
    let points = path_points(m);
    check_size(points.len())?;
    Ok(points)
}

/// Direct distances `d'` of the construction (before completion).
fn direct<S: Scalar>(m: &FiniteMetricSpace<S>, x: BoundPoint, y: BoundPoint) -> Option<S> {
    use BoundPoint::*;
    let k = |v: i64| S::from_i64(v);
    match (x, y) {
        (Original(a), Original(b)) => Some(m.dist(a, b)),
        (Original(a), Path { i, j, k: t }) | (Path { i, j, k: t }, Original(a)) => {
            let half = m.dist(i, j).half();
            if a == i {
                Some(half + k(t))
            } else if a == j {
                Some(half - k(t))
            } else {
                None
            }
        }
        (Path { i, j, k: s }, Path { i: i2, j: j2, k: t }) if (i, j) == (i2, j2) => {
            Some(k((s - t).abs()))
        }
        _ => None,
    }
}

/// The bounded gadget of a space in `M_5`: every pair `m_i, m_j` is joined by
/// a path of points `p_{i,j,k}`, `|k| < d(i,j)/2`, at unit spacing; the
/// shortest-path metric is then capped at 3. The output lies in `M^3`.
///
/// Points are ordered: originals first, then paths by `(i, j)` and increasing `k`.
pub fn bound<S: Scalar>(m: &FiniteMetricSpace<S>) -> Result<Gadget<S, BoundPoint>, ReductionError> {
    let points = check_input(m)?;
    let mut g = WeightedGraph::new(points.len());
    for (x, &a) in points.iter().enumerate() {
        for (y, &b) in points.iter().enumerate().skip(x + 1) {
            if let Some(w) = direct(m, a, b) {
                g.add_edge(x, y, w)?;
            }
        }
    }
    let space = g.metric(S::from_i64(CAP))?;
    Gadget::new(
        space,
        points,
        json!({"construction": "bound", "cap": CAP, "input_points": m.len()}),
    )
}

/// The same gadget computed by case analysis instead of shortest paths:
/// direct distances capped at 3, two path points sharing an endpoint `m_i`
/// at `min(d'(x, m_i) + d'(m_i, y), 3)`, and 3 otherwise.
pub fn bound_by_cases<S: Scalar>(
    m: &FiniteMetricSpace<S>,
) -> Result<FiniteMetricSpace<S>, ReductionError> {
    let points = check_input(m)?;
    let cap = S::from_i64(CAP);
    let n = points.len();
    let mut d = Vec::with_capacity(n * n);
    for &a in &points {
        for &b in &points {
            let v = if a == b {
                S::zero()
            } else if let Some(w) = direct(m, a, b) {
                w.min_of(cap)
            } else if let (BoundPoint::Path { i, j, .. }, BoundPoint::Path { i: i2, j: j2, .. }) =
                (a, b)
            {
                let shared = [i, j].into_iter().find(|e| *e == i2 || *e == j2);
                match shared {
                    Some(e) => {
                        let via = direct(m, a, BoundPoint::Original(e)).expect("endpoint")
                            + direct(m, BoundPoint::Original(e), b).expect("endpoint");
                        via.min_of(cap)
                    }
                    None => cap,
                }
            } else {
                cap
            };
            d.push(v);
        }
    }
    Ok(FiniteMetricSpace::from_flat(n, d)?)
}

/// The explicit correspondence between the gadgets of `M` and `N` induced by
/// a bijection `perm` (point `i` of `M` to point `perm[i]` of `N`).
///
/// Originals go to originals. Shared path indices go to each other (with
/// `k` negated when `perm` reverses the pair's order). Path points present on
/// only one side go to the nearer endpoint on the other side.
pub fn bound_forward_correspondence<S: Scalar>(
    gm: &Gadget<S, BoundPoint>,
    gn: &Gadget<S, BoundPoint>,
    perm: &[usize],
) -> Result<Correspondence, ReductionError> {
    let originals = |g: &Gadget<S, BoundPoint>| {
        g.points
            .iter()
            .filter(|p| matches!(p, BoundPoint::Original(_)))
            .count()
    };
    let n = originals(gm);
    if originals(gn) != n || perm.len() != n || !crate::distances::is_permutation(perm) {
        return Err(ReductionError::InvalidParams(
            "perm must be a bijection between the inputs".into(),
        ));
    }
    let idx_m = |p: BoundPoint| gm.index_of(&p);
    let idx_n = |p: BoundPoint| gn.index_of(&p);
    let mut pairs = Vec::new();
    for i in 0..n {
        pairs.push((i, perm[i]));
    }
    let range = |g: &Gadget<S, BoundPoint>, i: usize, j: usize| {
        g.points
            .iter()
            .filter_map(|p| match *p {
                BoundPoint::Path { i: a, j: b, k } if (a, b) == (i, j) => Some(k),
                _ => None,
            })
            .max()
            .unwrap_or(-1)
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let (pi, pj) = (perm[i], perm[j]);
            let flipped = pj < pi;
            let (lo, hi) = if flipped { (pj, pi) } else { (pi, pj) };
            let rm = range(gm, i, j);
            let rn = range(gn, lo, hi);
            // N-side path index matching M-side index k.
            let image = |k: i64| BoundPoint::Path {
                i: lo,
                j: hi,
                k: if flipped { -k } else { k },
            };
            for k in -rm.min(rn)..=rm.min(rn) {
                let x = idx_m(BoundPoint::Path { i, j, k }).expect("path point");
                let y = idx_n(image(k)).expect("path point");
                pairs.push((x, y));
            }
            for k in (rn + 1)..=rm {
                let near_i = idx_m(BoundPoint::Path { i, j, k: -k }).expect("path point");
                let near_j = idx_m(BoundPoint::Path { i, j, k }).expect("path point");
                pairs.push((near_i, pi));
                pairs.push((near_j, pj));
            }
            for k in (rm + 1)..=rn {
                let near_i = idx_n(image(-k)).expect("path point");
                let near_j = idx_n(image(k)).expect("path point");
                pairs.push((i, near_i));
                pairs.push((j, near_j));
            }
        }
    }
    Correspondence::from_pairs(gm.len(), gn.len(), pairs)
        .map_err(|e| ReductionError::InvalidParams(e.to_string()))
}
