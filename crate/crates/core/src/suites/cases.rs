use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::oracle::gh_brute_force;
use super::random::{perturb, RandomInstanceSpec};
use super::{Check, Trial};
use crate::distances::{
    distortion, gh_bijection, gh_exact, hl_close, hl_upper_from_witness, lipschitz_exact, GhBound,
    GhSearch, Witness,
};
use crate::games::{duality_check, GameSolver};
use crate::io::metric_to_json;
use crate::normlab::{
    e_nm, euclidean_norm, permutation_distortion, pnm_member, pnm_radius as cap_radius,
    random_unit_vector, CoefficientNorm, Norm, ALPHA_DELTA_MAX,
};
use crate::reductions::{
    bound, bound_forward_correspondence, lipschitz_gadget, separate, LevelGadgetParams, LevelPoint,
    SeparationGadgetParams,
};
use crate::scalar::{Rational, Scalar, TAU_EQ};
use crate::space::FiniteMetricSpace;

/// Node budget for searches on gadget pairs.
const GADGET_BUDGET: u64 = 5_000_000;

type Q = Rational;

fn q(v: Q) -> f64 {
    v.to_f64()
}

fn pair_json<S: Scalar>(m: &FiniteMetricSpace<S>, n: &FiniteMetricSpace<S>) -> Value {
    json!({"M": metric_to_json(m, None), "N": metric_to_json(n, None)})
}

fn gh(m: &FiniteMetricSpace<Q>, n: &FiniteMetricSpace<Q>) -> Q {
    gh_exact(m, n, None)
        .expect("small instances complete")
        .value
}

fn exact_eq(name: &'static str, inputs: Value, observed: Q, expected: Q) -> Check {
    Check::exact(
        name,
        inputs,
        q((observed - expected).abs()),
        0.0,
        observed == expected,
    )
}

fn exact_le(name: &'static str, inputs: Value, observed: Q, bound: Q) -> Check {
    Check::exact(name, inputs, q(observed), q(bound), observed <= bound)
}

pub(super) fn gh_oracle(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let m: FiniteMetricSpace<Q> =
        RandomInstanceSpec::new(rng.gen_range(3..=4), 1, 4, 4).sample(rng);
    let n: FiniteMetricSpace<Q> =
        RandomInstanceSpec::new(rng.gen_range(3..=4), 1, 4, 4).sample(rng);
    let value = gh(&m, &n);
    let oracle = gh_brute_force(&m, &n).expect("at most 16 pairs");
    let mut trial = Trial::default();
    trial.push(exact_eq(
        "gh equals enumeration",
        pair_json(&m, &n),
        value,
        oracle,
    ));
    trial
}

pub(super) fn gh_triangle(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let spaces: Vec<FiniteMetricSpace<Q>> = (0..3)
        .map(|_| RandomInstanceSpec::new(rng.gen_range(3..=4), 1, 4, 4).sample(rng))
        .collect();
    let (a, b, c) = (&spaces[0], &spaces[1], &spaces[2]);
    let (ab, bc, ac, ba) = (gh(a, b), gh(b, c), gh(a, c), gh(b, a));
    let inputs = json!({"A": metric_to_json(a, None), "B": metric_to_json(b, None), "C": metric_to_json(c, None)});
    let mut trial = Trial::default();
    trial.push(exact_le(
        "gh(A,C) <= gh(A,B) + gh(B,C)",
        inputs.clone(),
        ac,
        ab + bc,
    ));
    trial.push(exact_le(
        "gh(A,B) <= gh(A,C) + gh(C,B)",
        inputs.clone(),
        ab,
        ac + bc,
    ));
    trial.push(exact_eq("gh(A,B) = gh(B,A)", inputs, ab, ba));
    trial
}

fn m5_pair(rng: &mut ChaCha8Rng) -> (FiniteMetricSpace<Q>, FiniteMetricSpace<Q>) {
    let spec = RandomInstanceSpec::new(3, 5, 7, 4);
    (spec.sample(rng), spec.sample(rng))
}

pub(super) fn m5_m3_forward(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let (m, n) = m5_pair(rng);
    let mut trial = Trial::default();
    let value = gh(&m, &n);
    if value >= Q::from_i64(1) {
        return trial;
    }
    let perm = match gh_bijection(&m, &n).expect("equal sizes").witness {
        Witness::Bijection(p) => p,
        _ => unreachable!("bijection search returns a permutation"),
    };
    let (gm, gn) = (
        bound(&m).expect("input in M_5"),
        bound(&n).expect("input in M_5"),
    );
    let r = bound_forward_correspondence(&gm, &gn, &perm).expect("perm is a bijection");
    let explicit = distortion(&r, &gm.space, &gn.space)
        .expect("dimensions match")
        .half();
    let inputs = json!({"M": metric_to_json(&m, None), "N": metric_to_json(&n, None), "gh": value.to_json()});
    if explicit <= value {
        trial.push(exact_le(
            "gh(bound M, bound N) <= gh(M, N)",
            inputs,
            explicit,
            value,
        ));
        return trial;
    }
    let search = GhSearch::new(&gm.space, &gn.space)
        .bound(GhBound::AtMost(value))
        .first_only()
        .budget(GADGET_BUDGET)
        .run()
        .expect("gadgets are small");
    match search.best {
        Some(cert) => trial.push(exact_le(
            "gh(bound M, bound N) <= gh(M, N)",
            inputs,
            cert.value,
            value,
        )),
        None if search.complete => trial.push(Check::exact(
            "gh(bound M, bound N) <= gh(M, N)",
            inputs,
            q(explicit),
            q(value),
            false,
        )),
        None => trial.unverified.push(inputs),
    }
    trial
}

pub(super) fn m5_m3_backward(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let (m, n) = m5_pair(rng);
    let mut trial = Trial::default();
    let value = gh(&m, &n);
    let sixth = Q::new(1, 6);
    // gh(M̃, Ñ) >= threshold, with threshold = gh(M,N)/5 < 1/6, gives the bound.
    let threshold = value / Q::from_i64(5);
    if threshold == Q::from_i64(0) || threshold >= sixth {
        return trial;
    }
    let (gm, gn) = (
        bound(&m).expect("input in M_5"),
        bound(&n).expect("input in M_5"),
    );
    let inputs = json!({"M": metric_to_json(&m, None), "N": metric_to_json(&n, None), "gh": value.to_json()});
    let search = GhSearch::new(&gm.space, &gn.space)
        .bound(GhBound::Below(threshold))
        .first_only()
        .budget(GADGET_BUDGET)
        .run()
        .expect("gadgets are small");
    match search.best {
        Some(cert) => trial.push(exact_le(
            "gh(M, N) <= 5 gh(bound M, bound N)",
            inputs,
            value,
            Q::from_i64(5) * cert.value,
        )),
        None if search.complete => trial.push(exact_le(
            "gh(M, N) <= 5 gh(bound M, bound N)",
            inputs,
            value,
            Q::from_i64(5) * threshold,
        )),
        None => trial.unverified.push(inputs),
    }
    trial
}

pub(super) fn separate_bounds(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let spec = RandomInstanceSpec::new(3, 1, 4, 4);
    let (m, n): (FiniteMetricSpace<Q>, FiniteMetricSpace<Q>) = (spec.sample(rng), spec.sample(rng));
    let params = SeparationGadgetParams {
        p: Q::from_i64(1),
        copies: 2,
    };
    let (gm, gn) = (
        separate(&m, params).expect("valid params"),
        separate(&n, params).expect("valid params"),
    );
    let (inputs_gh, gadgets_gh) = (gh(&m, &n), gh(&gm.space, &gn.space));
    let inputs = json!({
        "M": metric_to_json(&m, None),
        "N": metric_to_json(&n, None),
        "gh_inputs": inputs_gh.to_json(),
        "gh_gadgets": gadgets_gh.to_json(),
    });
    let mut trial = Trial::default();
    trial.push(exact_le(
        "gh(gadgets) <= gh(inputs)",
        inputs.clone(),
        gadgets_gh,
        inputs_gh,
    ));
    if gadgets_gh < Q::new(1, 2) {
        trial.push(exact_le(
            "gh(inputs) <= gh(gadgets)",
            inputs,
            inputs_gh,
            gadgets_gh,
        ));
    }
    trial
}

pub(super) fn lip_gh_class(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let points = rng.gen_range(3..=4);
    let m: FiniteMetricSpace<Q> = RandomInstanceSpec::new(points, 2, 4, 8).sample(rng);
    let n = if rng.gen_bool(0.5) {
        perturb(&m, rng, -150, 150, Some((Q::from_i64(2), Q::from_i64(4))))
    } else {
        RandomInstanceSpec::new(points, 2, 4, 8).sample(rng)
    };
    let g = gh(&m, &n);
    let lip = lipschitz_exact(&m, &n).expect("small instance").value;
    let inputs = json!({"M": metric_to_json(&m, None), "N": metric_to_json(&n, None), "gh": g.to_json(), "lip": lip});
    let mut trial = Trial::default();
    if g < Q::from_i64(1) {
        trial.push(Check::le(
            "lip <= log(1 + gh)",
            inputs.clone(),
            lip,
            q(g).ln_1p(),
            TAU_EQ,
        ));
    }
    if lip < 1.0 {
        // q (e^ε − 1) / 2 with q = 4.
        trial.push(Check::le(
            "gh <= 2 (e^lip - 1)",
            inputs,
            q(g),
            2.0 * lip.exp_m1(),
            TAU_EQ,
        ));
    }
    trial
}

pub(super) fn level_preservation(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let spec = RandomInstanceSpec::with_numerators(2, 1, 16, 8);
    let (m, n): (FiniteMetricSpace<Q>, FiniteMetricSpace<Q>) = (spec.sample(rng), spec.sample(rng));
    let params = LevelGadgetParams {
        k_min: -1,
        k_max: 1,
    };
    let (gm, gn) = (
        lipschitz_gadget(&m, params).expect("valid"),
        lipschitz_gadget(&n, params).expect("valid"),
    );
    let inputs = pair_json(&m, &n);
    let same_level = |a: LevelPoint, b: LevelPoint| match (a, b) {
        (LevelPoint::Club, LevelPoint::Club) => true,
        (LevelPoint::Level { k, .. }, LevelPoint::Level { k: l, .. }) => k == l,
        _ => false,
    };
    let limit = Q::new(1, 5);
    let mut found = 0usize;
    let mut undecided = false;
    for (x, &a) in gm.points.iter().enumerate() {
        for (y, &b) in gn.points.iter().enumerate() {
            if same_level(a, b) {
                continue;
            }
            let outcome = GhSearch::new(&gm.space, &gn.space)
                .require(x, y)
                .bound(GhBound::Below(limit))
                .first_only()
                .budget(GADGET_BUDGET)
                .run()
                .expect("gadgets are small");
            if outcome.best.is_some() {
                found += 1;
            } else if !outcome.complete {
                undecided = true;
            }
        }
    }
    let mut trial = Trial::default();
    if undecided {
        trial.unverified.push(inputs.clone());
    }
    trial.push(Check::exact(
        "no level-crossing correspondence of distortion < 2/5",
        inputs.clone(),
        found as f64,
        0.0,
        found == 0,
    ));
    let best = gh_exact(&gm.space, &gn.space, Some(GADGET_BUDGET)).expect("gadgets are small");
    if best.value < limit {
        let crossing = best
            .witness
            .pairs()
            .iter()
            .filter(|&&(x, y)| !same_level(gm.points[x], gn.points[y]))
            .count();
        trial.push(Check::exact(
            "optimal witness preserves levels",
            inputs,
            crossing as f64,
            0.0,
            crossing == 0,
        ));
    }
    trial
}

fn random_coefficient_norm(rng: &mut ChaCha8Rng, dim: usize) -> CoefficientNorm {
    let mut f = vec![vec![0.0; dim]; dim];
    for n in 0..dim {
        for m in (n + 1)..dim {
            f[n][m] = rng.gen_range(0.5..=1.0);
        }
    }
    CoefficientNorm::with_defaults(dim, |n, m| f[n][m]).expect("coefficients in range")
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let scale = rng.gen_range(0.1..10.0);
    random_unit_vector(dim, rng)
        .into_iter()
        .map(|v| v * scale)
        .collect()
}

/// A unit vector, near a random `e_{n,m}` half of the time.
fn probe_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    if rng.gen_bool(0.5) {
        return random_unit_vector(dim, rng);
    }
    let n = rng.gen_range(0..dim - 1);
    let m = rng.gen_range(n + 1..dim);
    let sigma = rng.gen_range(0.0..0.2);
    let e = e_nm(n, m, dim).expect("valid indices");
    let x: Vec<f64> = e
        .iter()
        .zip(random_unit_vector(dim, rng))
        .map(|(a, b)| a + sigma * b)
        .collect();
    let len = euclidean_norm(&x);
    x.into_iter().map(|v| v / len).collect()
}

pub(super) fn norm_axioms(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let dim = rng.gen_range(2..=8);
    let norm = random_coefficient_norm(rng, dim);
    let inputs = norm.to_json();
    let (mut homogeneity, mut triangle, mut lower, mut upper) =
        (0.0f64, f64::NEG_INFINITY, 0.0f64, 0.0f64);
    let mut positivity = f64::INFINITY;
    let mut multi_membership = 0usize;
    for _ in 0..200 {
        let (x, y) = (random_vector(rng, dim), random_vector(rng, dim));
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let (nx, ny) = (norm.norm(&x), norm.norm(&y));
        homogeneity = homogeneity.max((norm.norm(&scaled) - lambda.abs() * nx).abs() / nx.max(1.0));
        triangle = triangle.max(norm.norm(&sum) - nx - ny);
        positivity = positivity.min(nx);
        let l2 = euclidean_norm(&x);
        lower = lower.max(l2 - nx);
        upper = upper.max(nx - ALPHA_DELTA_MAX * l2);
        let mut hits = 0;
        for n in 0..dim {
            for m in (n + 1)..dim {
                let neg: Vec<f64> = x.iter().map(|v| -v).collect();
                hits += pnm_member(&x, n, m, &norm).expect("dims match") as usize;
                hits += pnm_member(&neg, n, m, &norm).expect("dims match") as usize;
            }
        }
        multi_membership += (hits > 1) as usize;
    }
    let mut trial = Trial::default();
    trial.push(Check::le(
        "homogeneity",
        inputs.clone(),
        homogeneity,
        0.0,
        1e-12,
    ));
    trial.push(Check::le(
        "triangle inequality",
        inputs.clone(),
        triangle,
        0.0,
        TAU_EQ,
    ));
    trial.push(Check::exact(
        "positivity",
        inputs.clone(),
        -positivity,
        0.0,
        positivity > 0.0,
    ));
    trial.push(Check::le(
        "euclidean <= norm",
        inputs.clone(),
        lower,
        0.0,
        1e-12,
    ));
    trial.push(Check::le(
        "norm <= (200/199) euclidean",
        inputs.clone(),
        upper,
        0.0,
        1e-12,
    ));
    trial.push(Check::exact(
        "at most one set ±P_nm",
        inputs,
        multi_membership as f64,
        0.0,
        multi_membership == 0,
    ));
    trial
}

pub(super) fn lemmsep(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let dim = 3 + t % 6;
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|n| (n + 1..dim).map(move |m| (n, m)))
        .collect();
    let mut deviation = 0.0f64;
    for &(n, m) in &pairs {
        for &(n2, m2) in &pairs {
            if (n, m) == (n2, m2) {
                continue;
            }
            let (a, b) = (
                e_nm(n, m, dim).expect("valid"),
                e_nm(n2, m2, dim).expect("valid"),
            );
            let diff: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let shared = [n, m].iter().filter(|i| **i == n2 || **i == m2).count();
            let (want_diff, want_sum) = if shared == 1 {
                (1.0, 3f64.sqrt())
            } else {
                (2f64.sqrt(), 2f64.sqrt())
            };
            deviation = deviation
                .max((euclidean_norm(&diff) - want_diff).abs())
                .max((euclidean_norm(&sum) - want_sum).abs());
        }
    }
    let norm = random_coefficient_norm(rng, dim);
    let mut closest = f64::INFINITY;
    let signed: Vec<Vec<f64>> = pairs
        .iter()
        .flat_map(|&(n, m)| {
            let e = e_nm(n, m, dim).expect("valid");
            let neg: Vec<f64> = e.iter().map(|v| -v).collect();
            [e, neg]
        })
        .collect();
    for (i, a) in signed.iter().enumerate() {
        for b in &signed[i + 1..] {
            closest = closest.min(norm.dist(a, b));
        }
    }
    let inputs = json!({"dim": dim, "norm": norm.to_json()});
    let mut trial = Trial::default();
    trial.push(Check::le(
        "|e ± e'| in {1, √2, √3}",
        inputs.clone(),
        deviation,
        0.0,
        1e-12,
    ));
    trial.push(Check::le(
        "±e_nm are 1-separated",
        inputs,
        1.0 - closest,
        0.0,
        1e-12,
    ));
    trial
}

pub(super) fn pnm_radius(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let dim = rng.gen_range(3..=8);
    let norm = random_coefficient_norm(rng, dim);
    let (mut disagreements, mut far_members) = (0usize, 0usize);
    let mut worst_member_distance = 0.0f64;
    for _ in 0..1000 {
        let x = probe_vector(rng, dim);
        for n in 0..dim {
            for m in (n + 1)..dim {
                let e = e_nm(n, m, dim).expect("valid");
                let d = euclidean_norm(&x.iter().zip(&e).map(|(a, b)| a - b).collect::<Vec<_>>());
                let member = pnm_member(&x, n, m, &norm).expect("dims match");
                if member != (d <= cap_radius(norm.h(n, m))) {
                    disagreements += 1;
                }
                if member {
                    worst_member_distance = worst_member_distance.max(d);
                    far_members += (d > 0.1) as usize;
                }
            }
        }
    }
    let inputs = norm.to_json();
    let mut trial = Trial::default();
    trial.push(Check::exact(
        "membership agrees with radius test",
        inputs.clone(),
        disagreements as f64,
        0.0,
        disagreements == 0,
    ));
    trial.push(Check::exact(
        "members lie within 1/10",
        inputs,
        worst_member_distance,
        0.1,
        far_members == 0,
    ));
    trial
}

pub(super) fn perm_distortion_chain(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let spec = RandomInstanceSpec::with_numerators(4, 4, 8, 8);
    let (f, g): (FiniteMetricSpace<Q>, FiniteMetricSpace<Q>) = (spec.sample(rng), spec.sample(rng));
    let cert = gh_bijection(&f, &g).expect("equal sizes");
    let perm = match &cert.witness {
        Witness::Bijection(p) => p.clone(),
        _ => unreachable!("bijection search returns a permutation"),
    };
    let r = q(cert.value);
    let fnorm = CoefficientNorm::from_metric(
        &f.to_f64(),
        crate::normlab::DEFAULT_ALPHA,
        crate::normlab::DEFAULT_DELTA,
    )
    .expect("values in [1/2, 1]");
    let gnorm = CoefficientNorm::from_metric(
        &g.to_f64(),
        crate::normlab::DEFAULT_ALPHA,
        crate::normlab::DEFAULT_DELTA,
    )
    .expect("values in [1/2, 1]");
    let report =
        permutation_distortion(&fnorm, &gnorm, &perm, 1000, t as u64).expect("same dimension");
    let inputs = json!({"f": metric_to_json(&f, None), "g": metric_to_json(&g, None), "perm": perm, "gh_bijection": cert.value.to_json()});
    let delta = fnorm.delta();
    let mut trial = Trial::default();
    trial.push(Check::exact(
        "pointwise check",
        inputs.clone(),
        report.worst_ratio,
        delta * report.max_pair_gap,
        report.pointwise_check,
    ));
    trial.push(Check::le(
        "bm bound <= 4 δ r",
        inputs.clone(),
        report.bm_upper_bound,
        4.0 * delta * r,
        TAU_EQ,
    ));
    trial.push(Check::le(
        "max pair gap = 2 r",
        inputs,
        (report.max_pair_gap - 2.0 * r).abs(),
        0.0,
        1e-12,
    ));
    trial
}

pub(super) fn game_duality(rng: &mut ChaCha8Rng, _t: usize) -> Trial {
    let na = rng.gen_range(1..=4);
    let nb = rng.gen_range(1..=(7 - na).min(4));
    let m: FiniteMetricSpace<Q> = RandomInstanceSpec::new(na, 1, 4, 2).sample(rng);
    let n: FiniteMetricSpace<Q> = RandomInstanceSpec::new(nb, 1, 4, 2).sample(rng);
    let report = duality_check(&m, &n).expect("within the size limit");
    let inputs = pair_json(&m, &n);
    let mut trial = Trial::default();
    trial.push(exact_eq(
        "stabilized value = gh",
        inputs.clone(),
        report.stabilized_value,
        report.gh,
    ));
    trial.push(Check::exact(
        "value is monotone in depth",
        inputs.clone(),
        report.monotonicity_violations as f64,
        0.0,
        report.monotonicity_violations == 0,
    ));
    if na + nb <= 5 {
        let mut solver = GameSolver::new(&m, &n).expect("small");
        let differing = (0..=3)
            .filter(|&k| {
                solver.value(&[], &[], k).expect("empty start")
                    != solver.ordinal_value(&[], &[], k).expect("empty start")
            })
            .count();
        trial.push(Check::exact(
            "ordinal rule gives the same value",
            inputs,
            differing as f64,
            0.0,
            differing == 0,
        ));
    }
    trial
}

/// `2ε + 2√ε + log(1 + max{ε, √ε}) + ε·max{1, ε + √ε}`, written out independently.
fn phi2_reference(eps: f64) -> f64 {
    let root = eps.sqrt();
    2.0 * eps + 2.0 * root + (1.0 + eps.max(root)).ln() + eps * (eps + root).max(1.0)
}

pub(super) fn hl_phi2(rng: &mut ChaCha8Rng, t: usize) -> Trial {
    let eps = if t % 2 == 0 {
        Q::new(1, 20)
    } else {
        Q::new(1, 10)
    };
    let points = rng.gen_range(3..=6);
    let m: FiniteMetricSpace<Q> = RandomInstanceSpec::with_numerators(points, 1, 16, 4).sample(rng);
    let max_permille = (q(eps) * 1000.0 / 3.0).floor() as i64;
    let n = perturb(&m, rng, 0, max_permille, None);
    let inputs =
        json!({"M": metric_to_json(&m, None), "N": metric_to_json(&n, None), "eps": eps.to_json()});
    let mut trial = Trial::default();
    let close = hl_close(&m, &n, eps).expect("positive epsilon");
    let Some(witness) = close.witness else {
        trial.push(Check::exact("pair is HL(ε)-close", inputs, 1.0, 0.0, false));
        return trial;
    };
    let report = hl_upper_from_witness(&m, &n, eps, &witness, t as u64).expect("witness is valid");
    for check in &report.checks {
        trial.push(Check::le(
            check.name,
            inputs.clone(),
            check.value,
            check.bound,
            TAU_EQ * check.bound.abs().max(1.0),
        ));
    }
    trial.push(Check::le(
        "returned bound = φ₂(ε)",
        inputs,
        (report.phi2 - phi2_reference(q(eps))).abs(),
        0.0,
        1e-15,
    ));
    trial
}
