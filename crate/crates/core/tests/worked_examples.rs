//! Small worked instances with hand-computed or independently computed
//! answers.

use metriclab::distances::{
    distortion, gh_bijection, gh_exact, hl_close, hl_upper_from_witness, lipschitz_exact,
    max_separated_net, phi2, Correspondence, GhBound, GhSearch,
};
use metriclab::games::{duality_check, game_value, game_winner};
use metriclab::graph::WeightedGraph;
use metriclab::normlab::{
    e_nm, euclidean_norm, kadets_sum_check, permutation_distortion, pnm_member, CoefficientNorm,
    Norm, NormOracle,
};
use metriclab::reductions::{
    bm_gadget, bound, hl_gadget, k_weight, kadets_gadget, lipschitz_gadget, separate,
    BmGadgetParams, BoundPoint, KadetsGadgetParams, KadetsPoint, LevelGadgetParams, LevelPoint,
    SeparationGadgetParams,
};
use metriclab::{ClassBounds, FiniteMetricSpace, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn r(p: i128, d: i128) -> Rational {
    Rational::new(p, d)
}

fn two_point(d: Rational) -> FiniteMetricSpace<Rational> {
    FiniteMetricSpace::validate(vec![vec![q(0), d], vec![d, q(0)]]).unwrap()
}

fn floyd_warshall(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(i, j, w) in edges {
        d[i][j] = d[i][j].min(w);
        d[j][i] = d[j][i].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Half the minimum distortion over all correspondences, by enumerating
/// every relation.
fn gh_by_enumeration(m: &FiniteMetricSpace<Rational>, n: &FiniteMetricSpace<Rational>) -> Rational {
    let (a, b) = (m.len(), n.len());
    let mut best: Option<Rational> = None;
    for rel in 1u32..(1 << (a * b)) {
        let pairs: Vec<(usize, usize)> = (0..a * b)
            .filter(|c| rel >> c & 1 == 1)
            .map(|c| (c / b, c % b))
            .collect();
        let covers = (0..a).all(|i| pairs.iter().any(|p| p.0 == i))
            && (0..b).all(|j| pairs.iter().any(|p| p.1 == j));
        if !covers {
            continue;
        }
        let mut worst = q(0);
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let gap = (m.dist(i, k) - n.dist(j, l)).abs();
                if gap > worst {
                    worst = gap;
                }
            }
        }
        if best.map_or(true, |v| worst < v) {
            best = Some(worst);
        }
    }
    best.unwrap() / q(2)
}

fn random_space(
    rng: &mut ChaCha8Rng,
    n: usize,
    lo: i64,
    hi: i64,
    den: i64,
) -> FiniteMetricSpace<Rational> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, r(rng.gen_range(lo..=hi) as i128, den as i128)));
        }
    }
    WeightedGraph::from_edges(n, edges)
        .unwrap()
        .metric(r(hi as i128, den as i128))
        .unwrap()
}

#[test]
fn graph_metric_matches_floyd_warshall() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = 8;
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, (i + 1) % n, rng.gen_range(1..10) as f64));
            for j in (i + 2)..n {
                if rng.gen_bool(0.3) && !(i == 0 && j == n - 1) {
                    edges.push((i, j, rng.gen_range(1..10) as f64));
                }
            }
        }
        let g = WeightedGraph::from_edges(n, edges.clone()).unwrap();
        let m = g.metric(1e6).unwrap();
        assert_eq!(m.to_matrix(), floyd_warshall(n, &edges));
    }
}

#[test]
fn scaling_into_m5() {
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), r(1, 2), r(3, 4)],
        vec![r(1, 2), q(0), r(1, 2)],
        vec![r(3, 4), r(1, 2), q(0)],
    ])
    .unwrap();
    let p = m.min_distance().unwrap();
    assert!(m.scale(q(5) / p).in_class(&ClassBounds::lower(q(5))));
    assert_eq!(m.scale(q(1)), m);
    assert!(two_point(q(5)).in_class(&ClassBounds::lower(q(5))));
    assert!(!two_point(r(49, 10)).in_class(&ClassBounds::lower(q(5))));
}

#[test]
fn full_correspondence_distortion_is_the_larger_distance() {
    for (a, b) in [(1, 3), (4, 2), (5, 5)] {
        let d = distortion(
            &Correspondence::full(2, 2),
            &two_point(q(a)),
            &two_point(q(b)),
        )
        .unwrap();
        assert_eq!(d, q(a.max(b)));
    }
}

#[test]
fn gh_of_two_point_spaces() {
    let (a, b) = (two_point(q(1)), two_point(q(3)));
    assert_eq!(gh_by_enumeration(&a, &b), q(1));
    assert_eq!(gh_exact(&a, &b, None).unwrap().value, q(1));
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), q(2), q(3)],
        vec![q(2), q(0), q(4)],
        vec![q(3), q(4), q(0)],
    ])
    .unwrap();
    let cert = gh_exact(&m, &m, None).unwrap();
    assert_eq!(cert.value, q(0));
    assert_eq!(cert.witness.pairs(), vec![(0, 0), (1, 1), (2, 2)]);
}

#[test]
fn gh_agrees_with_enumeration_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let (na, nb) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_space(&mut rng, na, 1, 8, 2);
        let b = random_space(&mut rng, nb, 1, 8, 2);
        assert_eq!(
            gh_exact(&a, &b, None).unwrap().value,
            gh_by_enumeration(&a, &b)
        );
    }
}

#[test]
fn equilateral_bijection_value() {
    let a = FiniteMetricSpace::equilateral(3, q(1)).unwrap();
    let b = FiniteMetricSpace::equilateral(3, q(2)).unwrap();
    assert_eq!(gh_bijection(&a, &b).unwrap().value, r(1, 2));
    assert_eq!(gh_exact(&a, &b, None).unwrap().value, r(1, 2));
}

#[test]
fn bijection_and_gh_agree_below_half_the_separation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut seen = 0;
    while seen < 20 {
        let a = random_space(&mut rng, 4, 20, 28, 4);
        let b = random_space(&mut rng, 4, 20, 28, 4);
        let gh = gh_exact(&a, &b, None).unwrap().value;
        if gh < r(5, 2) {
            assert_eq!(gh_bijection(&a, &b).unwrap().value, gh);
            seen += 1;
        }
    }
}

#[test]
fn lipschitz_of_two_point_spaces() {
    let a = FiniteMetricSpace::validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let b = FiniteMetricSpace::validate(vec![
        vec![0.0, std::f64::consts::E],
        vec![std::f64::consts::E, 0.0],
    ])
    .unwrap();
    assert!((lipschitz_exact(&a, &b).unwrap().value - 1.0).abs() < 1e-12);
    assert_eq!(lipschitz_exact(&a, &a).unwrap().value, 0.0);
}

#[test]
fn hl_closeness_of_two_point_spaces() {
    let eps = r(1, 10);
    let near = hl_close(&two_point(q(1)), &two_point(r(105, 100)), eps).unwrap();
    let w = near.witness.expect("witness exists");
    assert_eq!(w.as_bijection().map(|p| p.len()), Some(2));
    // Directly: 1.05 <= 1 + eps·max(1, 1) and 1 <= 1.05 + eps·max(1, 1.05).
    assert!(r(105, 100) <= q(1) + eps && q(1) <= r(105, 100) + eps * r(105, 100));
    let far = hl_close(&two_point(q(1)), &two_point(q(3)), eps).unwrap();
    assert!(far.witness.is_none() && far.complete);
}

#[test]
fn phi2_values() {
    let at_small = 0.02 + 0.2 + 1.1f64.ln() + 0.01;
    assert!((phi2(0.01) - at_small).abs() < 1e-12);
    assert!((phi2(0.01) - 0.3253).abs() < 1e-4);
    assert!((phi2(1.0) - (6.0 + 2f64.ln())).abs() < 1e-12);
    assert!((phi2(1.0) - 6.6931).abs() < 1e-4);
}

#[test]
fn hl_bounds_hold_for_identical_spaces() {
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), q(1), q(2)],
        vec![q(1), q(0), q(1)],
        vec![q(2), q(1), q(0)],
    ])
    .unwrap();
    let report =
        hl_upper_from_witness(&m, &m, r(1, 1000), &Correspondence::identity(3), 0).unwrap();
    assert!(report.all_hold());
    assert_eq!(report.phi2, phi2(0.001));
}

#[test]
fn separated_nets() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for seed in 0..20 {
        let m = random_space(&mut rng, 7, 1, 12, 2).to_f64();
        let min = m.min_distance().unwrap();
        assert_eq!(max_separated_net(&m, min * 0.5, seed).len(), 7);
        assert_eq!(max_separated_net(&m, m.diameter() * 2.0, seed).len(), 1);
        let delta = 2.5;
        let net = max_separated_net(&m, delta, seed);
        for &a in &net {
            for &b in &net {
                assert!(a == b || m.dist(a, b) >= delta);
            }
        }
        for p in 0..7 {
            assert!(net.iter().any(|&a| m.dist(p, a) < delta));
        }
    }
}

#[test]
fn separation_of_a_point() {
    let g = separate(
        &FiniteMetricSpace::singleton(),
        SeparationGadgetParams { p: q(1), copies: 3 },
    )
    .unwrap();
    assert_eq!(
        g.space.to_matrix(),
        FiniteMetricSpace::equilateral(3, q(1)).unwrap().to_matrix()
    );
}

#[test]
fn separation_gadget_gh_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let a = random_space(&mut rng, 3, 1, 12, 4);
        let b = random_space(&mut rng, 3, 1, 12, 4);
        let params = SeparationGadgetParams { p: q(1), copies: 2 };
        let (ga, gb) = (separate(&a, params).unwrap(), separate(&b, params).unwrap());
        let inputs = gh_by_enumeration(&a, &b);
        let gadgets = gh_exact(&ga.space, &gb.space, None).unwrap().value;
        assert!(gadgets <= inputs);
        if gadgets < r(1, 2) {
            assert!(inputs <= gadgets);
        }
    }
}

#[test]
fn bound_gadget_paths() {
    let m = two_point(q(5));
    let g = bound(&m).unwrap();
    let ks: Vec<i64> = g
        .points
        .iter()
        .filter_map(|p| match p {
            BoundPoint::Path { k, .. } => Some(*k),
            _ => None,
        })
        .collect();
    assert_eq!(ks, vec![-2, -1, 0, 1, 2]);
    let p = g.index_of(&BoundPoint::Path { i: 0, j: 1, k: -2 }).unwrap();
    assert_eq!(g.space.dist(0, p), r(1, 2));
    assert!(g.space.in_class(&ClassBounds::upper(q(3))));
}

#[test]
fn bound_gadget_forward_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = 0;
    while seen < 5 {
        let a = random_space(&mut rng, 3, 20, 28, 4);
        let b = random_space(&mut rng, 3, 20, 28, 4);
        let gh = gh_exact(&a, &b, None).unwrap().value;
        if gh >= q(1) {
            continue;
        }
        let (ga, gb) = (bound(&a).unwrap(), bound(&b).unwrap());
        let outcome = GhSearch::new(&ga.space, &gb.space)
            .bound(GhBound::AtMost(gh))
            .first_only()
            .run()
            .unwrap();
        assert!(outcome.best.is_some(), "no correspondence within {gh}");
        seen += 1;
    }
}

#[test]
fn lipschitz_gadget_distances() {
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), q(1), r(3, 2)],
        vec![q(1), q(0), r(3, 2)],
        vec![r(3, 2), r(3, 2), q(0)],
    ])
    .unwrap();
    let g = lipschitz_gadget(
        &m,
        LevelGadgetParams {
            k_min: -1,
            k_max: 1,
        },
    )
    .unwrap();
    let club = g.index_of(&LevelPoint::Club).unwrap();
    let at = |i, k| g.index_of(&LevelPoint::Level { i, k }).unwrap();
    for i in 0..3 {
        assert_eq!(g.space.dist(at(i, 0), club), q(5));
        for j in 0..3 {
            if i != j {
                let expected = q(20) + q(1).min_of(m.dist(i, j) / q(2));
                assert_eq!(g.space.dist(at(i, 1), at(j, -1)), expected);
            }
        }
    }
}

#[test]
fn level_gadgets_of_isometric_inputs_are_isometric() {
    let a = two_point(r(1, 4));
    let b = a.permuted(&[1, 0]).unwrap();
    let params = LevelGadgetParams {
        k_min: -2,
        k_max: 2,
    };
    let (ga, gb) = (
        lipschitz_gadget(&a, params).unwrap(),
        lipschitz_gadget(&b, params).unwrap(),
    );
    assert_eq!(gh_exact(&ga.space, &gb.space, None).unwrap().value, q(0));
}

#[test]
fn hl_gadget_level_zero_and_club() {
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), r(1, 2), q(2)],
        vec![r(1, 2), q(0), q(2)],
        vec![q(2), q(2), q(0)],
    ])
    .unwrap();
    let h = hl_gadget(
        &m,
        LevelGadgetParams {
            k_min: -2,
            k_max: 0,
        },
    )
    .unwrap();
    let l = lipschitz_gadget(
        &m,
        LevelGadgetParams {
            k_min: -2,
            k_max: 0,
        },
    )
    .unwrap();
    let hclub = h.index_of(&LevelPoint::Club).unwrap();
    let lclub = l.index_of(&LevelPoint::Club).unwrap();
    for i in 0..3 {
        for k in -2..=0 {
            let (hp, lp) = (
                h.index_of(&LevelPoint::Level { i, k }).unwrap(),
                l.index_of(&LevelPoint::Level { i, k }).unwrap(),
            );
            assert_eq!(h.space.dist(hp, hclub), l.space.dist(lp, lclub));
        }
        for j in 0..3 {
            let (x, y) = (
                h.index_of(&LevelPoint::Level { i, k: 0 }).unwrap(),
                h.index_of(&LevelPoint::Level { i: j, k: 0 }).unwrap(),
            );
            assert_eq!(h.space.dist(x, y), m.dist(i, j).min_of(q(1)));
        }
    }
}

#[test]
fn bm_gadget_basics() {
    assert_eq!(k_weight(2.1, 1.0), 2.1);
    assert_eq!(k_weight(10.0, 1.0), 3.0);
    assert_eq!(k_weight(0.1, 1.0), 2.0);
    let plane = NormOracle::euclidean(2).unwrap();
    let vectors = vec![vec![1.0, 0.0], vec![-1.0, 0.0]];
    let g = bm_gadget(
        &plane,
        &BmGadgetParams::for_norm(&plane, vectors.clone()).unwrap(),
    )
    .unwrap();
    assert_eq!(g.space.dist(0, 1), 15.0);
    let reversed: Vec<Vec<f64>> = vectors.into_iter().rev().collect();
    let h = bm_gadget(&plane, &BmGadgetParams::for_norm(&plane, reversed).unwrap()).unwrap();
    let iso = GhSearch::new(&g.space, &h.space)
        .bound(GhBound::AtMost(0.0))
        .first_only()
        .bijective()
        .run()
        .unwrap();
    assert!(iso.best.is_some());
}

#[test]
fn kadets_gadget_distances() {
    let plane = NormOracle::euclidean(2).unwrap();
    let sphere = vec![
        vec![1.0, 0.0],
        vec![-1.0, 0.0],
        vec![0.0, 1.0],
        vec![0.0, -1.0],
    ];
    let single = kadets_gadget(
        &plane,
        &KadetsGadgetParams {
            sphere_points: sphere.clone(),
            families: vec![vec![2]],
        },
    )
    .unwrap();
    let p = single
        .index_of(&KadetsPoint::Path { family: 0, k: 2 })
        .unwrap();
    for i in 0..4 {
        let expected = if i == 2 {
            10.0
        } else {
            10.0 + plane.dist(&sphere[i], &sphere[2])
        };
        assert!((single.space.dist(i, p) - expected).abs() < 1e-12);
    }
    let pair = kadets_gadget(
        &plane,
        &KadetsGadgetParams {
            sphere_points: sphere.clone(),
            families: vec![vec![0, 1]],
        },
    )
    .unwrap();
    let (a, b) = (
        pair.index_of(&KadetsPoint::Path { family: 0, k: 0 })
            .unwrap(),
        pair.index_of(&KadetsPoint::Path { family: 0, k: 1 })
            .unwrap(),
    );
    assert_eq!(pair.space.dist(a, b), 15.0);

    // The rotation by a quarter turn permutes the sphere points: 0→2, 1→3, 2→1, 3→0.
    let rotated = vec![
        sphere[3].clone(),
        sphere[2].clone(),
        sphere[0].clone(),
        sphere[1].clone(),
    ];
    let families = vec![vec![0, 2], vec![1]];
    let ga = kadets_gadget(
        &plane,
        &KadetsGadgetParams {
            sphere_points: sphere,
            families: families.clone(),
        },
    )
    .unwrap();
    let gb = kadets_gadget(
        &plane,
        &KadetsGadgetParams {
            sphere_points: rotated,
            families,
        },
    )
    .unwrap();
    assert!(gh_exact(&ga.space, &gb.space, None).unwrap().value.abs() < 1e-9);
}

#[test]
fn coefficient_norm_values() {
    let norm = CoefficientNorm::with_defaults(6, |n, m| 0.5 + 0.05 * (n + m) as f64).unwrap();
    for n in 0..6 {
        for m in (n + 1)..6 {
            let e = e_nm(n, m, 6).unwrap();
            assert!(
                (norm.norm(&e) - (norm.alpha() + norm.delta() * norm.coefficient(n, m))).abs()
                    < 1e-12
            );
            assert!(pnm_member(&e, n, m, &norm).unwrap());
        }
    }
    let x = [1.0, -1.0, 0.0, 0.0, 0.0, 0.0];
    assert!((norm.norm(&x) - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn lemmsep_values() {
    let e = |n, m| e_nm(n, m, 4).unwrap();
    let diff = |a: &[f64], b: &[f64], s: f64| {
        euclidean_norm(&a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>())
    };
    assert!((diff(&e(0, 1), &e(0, 2), -1.0) - 1.0).abs() < 1e-15);
    assert!((diff(&e(0, 1), &e(0, 2), 1.0) - 3f64.sqrt()).abs() < 1e-15);
    assert!((diff(&e(0, 1), &e(2, 3), 1.0) - 2f64.sqrt()).abs() < 1e-15);
    assert!((diff(&e(0, 1), &e(2, 3), -1.0) - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn far_unit_vectors_are_not_in_pnm() {
    let norm = CoefficientNorm::with_defaults(3, |_, _| 1.0).unwrap();
    let mut x = e_nm(0, 1, 3).unwrap();
    x[2] = 0.2;
    let len = euclidean_norm(&x);
    let x: Vec<f64> = x.iter().map(|v| v / len).collect();
    let e = e_nm(0, 1, 3).unwrap();
    assert!(euclidean_norm(&x.iter().zip(&e).map(|(a, b)| a - b).collect::<Vec<_>>()) > 0.1);
    assert!(!pnm_member(&x, 0, 1, &norm).unwrap());
}

#[test]
fn permutation_distortion_cases() {
    let f = CoefficientNorm::with_defaults(4, |n, m| if n + m == 3 { 0.5 } else { 0.75 }).unwrap();
    let same = permutation_distortion(&f, &f, &[0, 1, 2, 3], 200, 1).unwrap();
    assert_eq!(same.max_pair_gap, 0.0);
    assert_eq!(same.bm_upper_bound, 0.0);
    assert!(same.pointwise_check);

    let half = CoefficientNorm::with_defaults(4, |_, _| 0.5).unwrap();
    let one = CoefficientNorm::with_defaults(4, |_, _| 1.0).unwrap();
    for perm in [[0, 1, 2, 3], [3, 1, 0, 2]] {
        assert_eq!(
            permutation_distortion(&half, &one, &perm, 50, 2)
                .unwrap()
                .max_pair_gap,
            0.5
        );
    }

    let fm = FiniteMetricSpace::validate(vec![
        vec![0.0, 0.5, 0.75, 1.0],
        vec![0.5, 0.0, 0.625, 0.875],
        vec![0.75, 0.625, 0.0, 0.5],
        vec![1.0, 0.875, 0.5, 0.0],
    ])
    .unwrap();
    let gm = FiniteMetricSpace::validate(vec![
        vec![0.0, 0.625, 0.5, 1.0],
        vec![0.625, 0.0, 0.875, 0.5],
        vec![0.5, 0.875, 0.0, 0.75],
        vec![1.0, 0.5, 0.75, 0.0],
    ])
    .unwrap();
    let cert = gh_bijection(&fm, &gm).unwrap();
    let perm = cert.witness.pairs().iter().map(|p| p.1).collect::<Vec<_>>();
    let fnorm = CoefficientNorm::with_defaults(4, |n, m| fm.dist(n, m)).unwrap();
    let gnorm = CoefficientNorm::with_defaults(4, |n, m| gm.dist(n, m)).unwrap();
    let report = permutation_distortion(&fnorm, &gnorm, &perm, 200, 3).unwrap();
    assert!((report.max_pair_gap - 2.0 * cert.value).abs() < 1e-12);
}

#[test]
fn kadets_gaps_vanish_for_identical_pairs() {
    let plane = NormOracle::euclidean(2).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = [vec![1.0, 0.0], vec![s, s], vec![0.0, -1.0]]
        .into_iter()
        .map(|x| (x.clone(), x))
        .collect();
    let check = kadets_sum_check(&plane, &plane, &pairs, 0.01, 3).unwrap();
    assert!(check.holds);
    assert_eq!(check.worst_ratio, 0.0);
}

#[test]
fn game_examples() {
    let (a, b) = (two_point(q(1)), two_point(q(3)));
    assert_eq!(game_value(&a, &b, &[], &[], 4).unwrap(), q(1));
    assert_eq!(game_value(&a, &a, &[], &[], 4).unwrap(), q(0));
    assert_eq!(game_value(&a, &b, &[0, 1], &[0, 1], 0).unwrap(), q(1));
    for depth in 0..5 {
        assert!(game_winner(&a, &b, r(3, 2) + r(1, 100), depth).unwrap());
        assert!(game_winner(&a, &a, r(1, 100), depth).unwrap());
    }
    let report = duality_check(&a, &b).unwrap();
    assert_eq!(report.stabilized_value, q(1));
    assert!(!game_winner(&a, &b, r(9, 10), report.stabilization_depth).unwrap());
    let same = duality_check(&a, &a).unwrap();
    assert_eq!((same.stabilized_value, same.stabilization_depth), (q(0), 0));
}

#[test]
fn duality_on_random_three_point_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..15 {
        let a = random_space(&mut rng, 3, 1, 12, 4);
        let b = random_space(&mut rng, 3, 1, 12, 4);
        let report = duality_check(&a, &b).unwrap();
        assert!(report.matches_gh);
        assert_eq!(report.stabilized_value, gh_by_enumeration(&a, &b));
    }
}
