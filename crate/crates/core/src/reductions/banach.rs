use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::{check_size, Gadget, ReductionError};
use crate::graph::WeightedGraph;
use crate::normlab::{Norm, NormError};
use crate::scalar::{Rational, Scalar, TAU_EQ};
use crate::space::FiniteMetricSpace;

/// First index of the `c` sequence.
pub const FIRST_C_INDEX: usize = 7;
const VECTOR_DIST: f64 = 15.0;
const F_FIRST: f64 = 7.0;
const F_STEP: f64 = 10.0;
const TRIANGLE_EDGE: f64 = 5.0;
const CAP: f64 = 15.0;
/// Ratio of consecutive terms of the geometric `c` grid.
const C_RATIO: f64 = 16.0 / 15.0;

/// `max{2, min{3, c_m·ν(a−b)}}`.
pub fn k_weight(c_m: f64, nu: f64) -> f64 {
    (c_m * nu).min(3.0).max(2.0)
}

/// Truncation data for the Banach–Mazur gadget.
#[derive(Debug, Clone, PartialEq)]
pub struct BmGadgetParams {
    /// Distinct nonzero vectors.
    pub vectors: Vec<Vec<f64>>,
    /// `c[t]` is `c_{7+t}`.
    pub c: Vec<f64>,
    /// Rationals `q` for which every `q·a` gets an f-path.
    pub scalars: Vec<Rational>,
    /// Pairs `(a, b)` whose sum gets an x-triangle; `None` takes every pair
    /// whose sum is listed.
    pub sums: Option<Vec<(usize, usize)>>,
}

impl BmGadgetParams {
    /// Parameters with scalars `{−1}`, automatic sums, and a geometric `c`
    /// grid (ratio 16/15) covering every pairwise distance of the vectors.
    pub fn for_norm(norm: &dyn Norm, vectors: Vec<Vec<f64>>) -> Result<Self, ReductionError> {
        let mut params = BmGadgetParams {
            vectors,
            c: Vec::new(),
            scalars: vec![Rational::from_i64(-1)],
            sums: None,
        };
        params.c = geometric_c(norm, &params.vectors)?;
        Ok(params)
    }

    /// `π(q)` for every listed scalar: scalars sorted by `|num| + |den|` (then
    /// by value) are numbered 2, 3, ….
    pub fn rational_index(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.scalars.len()).collect();
        let height = |q: &Rational| q.numer().unsigned_abs() + q.denom().unsigned_abs();
        order.sort_by(|&x, &y| {
            let (a, b) = (&self.scalars[x], &self.scalars[y]);
            height(a).cmp(&height(b)).then(a.cmp(b))
        });
        let mut index = vec![0; self.scalars.len()];
        for (rank, &s) in order.iter().enumerate() {
            index[s] = rank + 2;
        }
        index
    }
}

impl BmGadgetParams {
    pub fn to_json(&self) -> Value {
        json!({
            "vectors": self.vectors,
            "c": self.c,
            "scalars": self.scalars.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "sums": self.sums,
        })
    }

    /// Reads `{"vectors", "c"?, "scalars"?, "sums"?}`. A missing `c` is
    /// filled with the geometric grid for `norm`; missing scalars default to
    /// `[-1]`.
    pub fn from_json(doc: &Value, norm: &dyn Norm) -> Result<Self, ReductionError> {
        let vectors = read_vectors(doc, "vectors")?;
        let scalars = match doc.get("scalars") {
            None | Some(Value::Null) => vec![Rational::from_i64(-1)],
            Some(Value::Array(list)) => list
                .iter()
                .map(|v| {
                    Rational::from_json(v).map_err(|e| ReductionError::InvalidParams(e.to_string()))
                })
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(invalid("scalars must be an array")),
        };
        let sums = match doc.get("sums") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                serde_json::from_value::<Vec<(usize, usize)>>(v.clone())
                    .map_err(|_| invalid("sums must be a list of index pairs"))?,
            ),
        };
        let c = match doc.get("c") {
            None | Some(Value::Null) => geometric_c(norm, &vectors)?,
            Some(v) => serde_json::from_value::<Vec<f64>>(v.clone())
                .map_err(|_| invalid("c must be a list of numbers"))?,
        };
        Ok(BmGadgetParams {
            vectors,
            c,
            scalars,
            sums,
        })
    }
}

fn invalid(msg: &str) -> ReductionError {
    ReductionError::InvalidParams(msg.to_string())
}

fn read_vectors(doc: &Value, key: &str) -> Result<Vec<Vec<f64>>, ReductionError> {
    let v = doc
        .get(key)
        .ok_or_else(|| ReductionError::InvalidParams(format!("missing \"{key}\"")))?;
    serde_json::from_value(v.clone())
        .map_err(|_| ReductionError::InvalidParams(format!("\"{key}\" must be a list of vectors")))
}

fn geometric_c(norm: &dyn Norm, vectors: &[Vec<f64>]) -> Result<Vec<f64>, ReductionError> {
    let mut rs = Vec::new();
    for (x, a) in vectors.iter().enumerate() {
        for b in &vectors[x + 1..] {
            norm.try_norm(a)?;
            norm.try_norm(b)?;
            rs.push(norm.dist(a, b));
        }
    }
    let Some(r_max) = rs.iter().copied().reduce(f64::max) else {
        return Ok(vec![2.125]);
    };
    let r_min = rs.iter().copied().fold(f64::INFINITY, f64::min);
    if !(r_min > 0.0) {
        return Err(ReductionError::InvalidParams(
            "vectors must be distinct".into(),
        ));
    }
    let mut c = vec![2.125 / r_max];
    while *c.last().expect("non-empty") < 2.125 / r_min {
        let next = c.last().expect("non-empty") * C_RATIO;
        c.push(next);
    }
    Ok(c)
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn same_vector(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TAU_EQ)
}

/// A point of the Banach–Mazur gadget. Vector indices refer to the
/// parameter list; pairs are ordered lexicographically by coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BmPoint {
    Vector(usize),
    /// `p^{m,k}_{a,b}`, `1 <= k <= m`.
    Path {
        a: usize,
        b: usize,
        m: usize,
        k: usize,
    },
    /// `f^j_{a,q}`, `1 <= j <= π(q)`; `q` indexes the scalar list.
    FPath {
        a: usize,
        q: usize,
        j: usize,
    },
    /// `x^i_{a,b}`, `1 <= i <= 3`.
    Triangle {
        a: usize,
        b: usize,
        i: usize,
    },
}

impl fmt::Display for BmPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BmPoint::Vector(a) => write!(f, "v{a}"),
            BmPoint::Path { a, b, m, k } => write!(f, "p({a},{b};{m},{k})"),
            BmPoint::FPath { a, q, j } => write!(f, "f({a},q{q};{j})"),
            BmPoint::Triangle { a, b, i } => write!(f, "x({a},{b};{i})"),
        }
    }
}

/// The Banach–Mazur gadget of a norm restricted to a finite vector list.
///
/// Distinct vectors are 15 apart. For every ordered pair `a ≺ b` and every
/// `m` with a listed `c_m`, a path of `m` points with edges
/// `K = max{2, min{3, c_m·ν(a−b)}}` joins `a` to `b`. For every vector `a` and
/// listed scalar `q`, a path `a, f¹, …, f^{π(q)}, q·a` with edges 7, 10, …, 10.
/// For every listed sum, a triangle of paths with edges 5 joins `a`, `b` and
/// `a + b`. The result is the shortest-path metric capped at 15.
pub fn bm_gadget(
    norm: &dyn Norm,
    params: &BmGadgetParams,
) -> Result<Gadget<f64, BmPoint>, ReductionError> {
    let vs = &params.vectors;
    for v in vs {
        if v.len() != norm.dim() {
            return Err(NormError::DimensionMismatch {
                expected: norm.dim(),
                got: v.len(),
            }
            .into());
        }
        if v.iter().all(|x| x.abs() <= TAU_EQ) {
            return Err(ReductionError::InvalidParams(
                "vectors must be nonzero".into(),
            ));
        }
    }
    for (x, a) in vs.iter().enumerate() {
        if vs[x + 1..].iter().any(|b| same_vector(a, b)) {
            return Err(ReductionError::InvalidParams(
                "vectors must be distinct".into(),
            ));
        }
    }
    if params.c.is_empty() || params.c.iter().any(|c| !(*c > 0.0)) {
        return Err(ReductionError::InvalidParams(
            "c must be a non-empty list of positive reals".into(),
        ));
    }
    if params.scalars.iter().any(|q| *q == Rational::from_i64(0)) {
        return Err(ReductionError::InvalidParams(
            "scalars must be nonzero".into(),
        ));
    }
    let mut sorted_scalars = params.scalars.clone();
    sorted_scalars.sort();
    sorted_scalars.dedup();
    if sorted_scalars.len() != params.scalars.len() {
        return Err(ReductionError::InvalidParams(
            "scalars must be distinct".into(),
        ));
    }
    let find = |target: &[f64]| vs.iter().position(|v| same_vector(v, target));

    // Ordered pairs a ≺ b.
    let mut pairs = Vec::new();
    for a in 0..vs.len() {
        for b in 0..vs.len() {
            if lex(&vs[a], &vs[b]) == Ordering::Less {
                pairs.push((a, b));
            }
        }
    }
    let ms: Vec<usize> = (FIRST_C_INDEX..FIRST_C_INDEX + params.c.len()).collect();
    for &(a, b) in &pairs {
        let r = norm.dist(&vs[a], &vs[b]);
        if !params.c.iter().any(|c| c * r > 2.0 && c * r < 2.25) {
            return Err(ReductionError::CoverageViolation { a, b });
        }
    }

    let pi = params.rational_index();
    let mut f_targets = Vec::new();
    for a in 0..vs.len() {
        for (qi, q) in params.scalars.iter().enumerate() {
            let qf = q.to_f64();
            let target: Vec<f64> = vs[a].iter().map(|x| qf * x).collect();
            let t = find(&target)
                .ok_or_else(|| ReductionError::ClosureViolation(format!("{q} times vector {a}")))?;
            f_targets.push((a, qi, t));
        }
    }

    let sums: Vec<(usize, usize, usize)> = match &params.sums {
        Some(list) => list
            .iter()
            .map(|&(a, b)| {
                if a >= vs.len() || b >= vs.len() || a == b {
                    return Err(ReductionError::InvalidParams(format!(
                        "bad sum pair ({a}, {b})"
                    )));
                }
                let (a, b) = if lex(&vs[a], &vs[b]) == Ordering::Less {
                    (a, b)
                } else {
                    (b, a)
                };
                let s: Vec<f64> = vs[a].iter().zip(&vs[b]).map(|(x, y)| x + y).collect();
                let t = find(&s).ok_or_else(|| {
                    ReductionError::ClosureViolation(format!("sum of vectors {a} and {b}"))
                })?;
                Ok((a, b, t))
            })
            .collect::<Result<_, _>>()?,
        None => pairs
            .iter()
            .filter_map(|&(a, b)| {
                let s: Vec<f64> = vs[a].iter().zip(&vs[b]).map(|(x, y)| x + y).collect();
                find(&s).map(|t| (a, b, t))
            })
            .collect(),
    };

    let total = vs.len()
        + pairs.len() * ms.iter().sum::<usize>()
        + vs.len() * pi.iter().sum::<usize>()
        + 3 * sums.len();
    check_size(total)?;

    let mut points: Vec<BmPoint> = (0..vs.len()).map(BmPoint::Vector).collect();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let push = |points: &mut Vec<BmPoint>, p: BmPoint| {
        points.push(p);
        points.len() - 1
    };
    for a in 0..vs.len() {
        for b in (a + 1)..vs.len() {
            edges.push((a, b, VECTOR_DIST));
        }
    }
    for &(a, b) in &pairs {
        let r = norm.dist(&vs[a], &vs[b]);
        for (t, &m) in ms.iter().enumerate() {
            let w = k_weight(params.c[t], r);
            let mut prev = a;
            for k in 1..=m {
                let p = push(&mut points, BmPoint::Path { a, b, m, k });
                edges.push((prev, p, w));
                prev = p;
            }
            edges.push((prev, b, w));
        }
    }
    for &(a, qi, target) in &f_targets {
        let mut prev = a;
        for j in 1..=pi[qi] {
            let p = push(&mut points, BmPoint::FPath { a, q: qi, j });
            edges.push((prev, p, if j == 1 { F_FIRST } else { F_STEP }));
            prev = p;
        }
        edges.push((prev, target, F_STEP));
    }
    for &(a, b, s) in &sums {
        let x1 = push(&mut points, BmPoint::Triangle { a, b, i: 1 });
        let x2 = push(&mut points, BmPoint::Triangle { a, b, i: 2 });
        let x3 = push(&mut points, BmPoint::Triangle { a, b, i: 3 });
        for (u, v) in [(a, x1), (b, x2), (x1, x3), (x2, x3), (x3, s)] {
            edges.push((u, v, TRIANGLE_EDGE));
        }
    }
    debug_assert_eq!(points.len(), total);
    let graph = WeightedGraph::from_edges(points.len(), edges)?;
    let space = graph.metric(CAP)?;
    let provenance = json!({
        "construction": "bm_gadget",
        "vectors": vs,
        "c": params.c,
        "first_c_index": FIRST_C_INDEX,
        "scalars": params.scalars.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "rational_index": pi,
        "sums": sums.iter().map(|&(a, b, _)| [a, b]).collect::<Vec<_>>(),
        "cap": CAP,
    });
    Gadget::new(space, points, provenance)
}

/// Truncation data for the Kadets gadget.
#[derive(Debug, Clone, PartialEq)]
pub struct KadetsGadgetParams {
    /// Unit vectors, closed under negation.
    pub sphere_points: Vec<Vec<f64>>,
    /// Non-empty, pairwise distinct sets of indices into `sphere_points`.
    pub families: Vec<Vec<usize>>,
}

impl KadetsGadgetParams {
    pub fn to_json(&self) -> Value {
        json!({"sphere_points": self.sphere_points, "families": self.families})
    }

    /// Reads `{"sphere_points", "families"}`.
    pub fn from_json(doc: &Value) -> Result<Self, ReductionError> {
        let sphere_points = read_vectors(doc, "sphere_points")?;
        let families = doc
            .get("families")
            .map(|v| serde_json::from_value(v.clone()))
            .ok_or_else(|| invalid("missing \"families\""))?
            .map_err(|_| invalid("families must be lists of indices"))?;
        Ok(KadetsGadgetParams {
            sphere_points,
            families,
        })
    }
}

/// A point of the Kadets gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KadetsPoint {
    Sphere(usize),
    /// `p_{F,k}` with `F` the `family`-th listed set and `k ∈ F`.
    Path {
        family: usize,
        k: usize,
    },
}

impl fmt::Display for KadetsPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KadetsPoint::Sphere(i) => write!(f, "x{i}"),
            KadetsPoint::Path { family, k } => write!(f, "p(F{family},{k})"),
        }
    }
}

/// The Kadets gadget: sphere points at their norm distance, `p_{F,k}` at
/// `10 + ‖x_i − x_k‖` from `x_i`, two points of the same family at
/// `15 + ‖Σ_{k∈F} x_k‖/|F|`, and points of different families at 20.
pub fn kadets_gadget(
    norm: &dyn Norm,
    params: &KadetsGadgetParams,
) -> Result<Gadget<f64, KadetsPoint>, ReductionError> {
    let xs = &params.sphere_points;
    for (i, x) in xs.iter().enumerate() {
        if (norm.try_norm(x)? - 1.0).abs() > TAU_EQ {
            return Err(ReductionError::NonUnitVector(i));
        }
    }
    for x in xs {
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        if !xs.iter().any(|y| same_vector(y, &neg)) {
            return Err(ReductionError::InvalidParams(
                "sphere points must be closed under negation".into(),
            ));
        }
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    for (f, fam) in params.families.iter().enumerate() {
        if fam.is_empty() {
            return Err(ReductionError::EmptyFamily(f));
        }
        let mut set = fam.clone();
        set.sort_unstable();
        set.dedup();
        if set.len() != fam.len() || set.iter().any(|&k| k >= xs.len()) {
            return Err(ReductionError::InvalidParams(format!(
                "family {f} is not a set of point indices"
            )));
        }
        if families.contains(&set) {
            return Err(ReductionError::InvalidParams(format!(
                "family {f} is listed twice"
            )));
        }
        families.push(set);
    }
    let mut points: Vec<KadetsPoint> = (0..xs.len()).map(KadetsPoint::Sphere).collect();
    for (family, set) in families.iter().enumerate() {
        points.extend(set.iter().map(|&k| KadetsPoint::Path { family, k }));
    }
    check_size(points.len())?;
    let spread: Vec<f64> = families
        .iter()
        .map(|set| {
            let mut sum = vec![0.0; norm.dim()];
            for &k in set {
                sum.iter_mut().zip(&xs[k]).for_each(|(s, v)| *s += v);
            }
            norm.norm(&sum) / set.len() as f64
        })
        .collect();
    let n = points.len();
    let mut d = Vec::with_capacity(n * n);
    for a in &points {
        for b in &points {
            use KadetsPoint::*;
            let v = match (*a, *b) {
                _ if a == b => 0.0,
                (Sphere(i), Sphere(j)) => norm.dist(&xs[i], &xs[j]),
                (Sphere(i), Path { k, .. }) | (Path { k, .. }, Sphere(i)) => {
                    10.0 + norm.dist(&xs[i], &xs[k])
                }
                (Path { family: f, .. }, Path { family: g, .. }) if f == g => 15.0 + spread[f],
                (Path { .. }, Path { .. }) => 20.0,
            };
            d.push(v);
        }
    }
    let space = FiniteMetricSpace::from_flat(n, d)?;
    let provenance = json!({
        "construction": "kadets_gadget",
        "sphere_points": xs,
        "families": families,
    });
    Gadget::new(space, points, provenance)
}
