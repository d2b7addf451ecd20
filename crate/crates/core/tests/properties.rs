use metriclab::distances::{gh_bijection, gh_exact, hausdorff};
use metriclab::games::{partial_cost, GameSolver};
use metriclab::graph::WeightedGraph;
use metriclab::io::{metric_from_json, metric_to_json};
use metriclab::normlab::{CoefficientNorm, Norm, ALPHA_DELTA_MAX};
use metriclab::reductions::{
    bound, lipschitz_gadget, separate, LevelGadgetParams, LevelPoint, SeparationGadgetParams,
};
use metriclab::{ClassBounds, FiniteMetricSpace, Rational, Scalar};
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Random weights on the complete graph, closed under shortest paths.
fn space(
    sizes: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
    den: i64,
) -> impl Strategy<Value = FiniteMetricSpace<Rational>> {
    sizes.prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * (n - 1) / 2).prop_map(move |w| {
            if n == 1 {
                return FiniteMetricSpace::singleton();
            }
            let mut edges = Vec::new();
            let mut it = w.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    edges.push((i, j, Rational::new(it.next().unwrap() as i128, den as i128)));
                }
            }
            WeightedGraph::from_edges(n, edges)
                .unwrap()
                .metric(Rational::new(hi as i128, den as i128))
                .unwrap()
        })
    })
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, dim)
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn coeff_norm() -> impl Strategy<Value = CoefficientNorm> {
    prop::collection::vec(0.5f64..=1.0, 10)
        .prop_map(|f| CoefficientNorm::with_defaults(5, |n, m| f[n * 2 + m % 2]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_closure_is_a_metric(
        n in 2usize..8,
        edges in prop::collection::vec((0usize..8, 0usize..8, 1i64..20), 0..20),
        cap in 1i64..30,
    ) {
        let mut g = WeightedGraph::new(n);
        let mut seen = std::collections::HashSet::new();
        for (i, j, w) in edges {
            let (i, j) = (i % n, j % n);
            if i != j && seen.insert((i.min(j), i.max(j))) {
                g.add_edge(i, j, q(w)).unwrap();
            }
        }
        let m = g.metric(q(cap)).unwrap();
        prop_assert!(FiniteMetricSpace::validate(m.to_matrix()).is_ok());
        prop_assert!(m.diameter() <= q(cap));
    }

    #[test]
    fn gh_is_symmetric_and_certified(a in space(1..=4, 1, 12, 4), b in space(1..=4, 1, 12, 4)) {
        let ab = gh_exact(&a, &b, None).unwrap();
        let ba = gh_exact(&b, &a, None).unwrap();
        prop_assert_eq!(ab.value, ba.value);
        prop_assert_eq!(ab.reevaluate(&a, &b).unwrap(), ab.value);
        prop_assert!(ab.exact);
    }

    #[test]
    fn gh_triangle_inequality(
        a in space(2..=3, 1, 12, 4),
        b in space(2..=3, 1, 12, 4),
        c in space(2..=3, 1, 12, 4),
    ) {
        let d = |x: &FiniteMetricSpace<Rational>, y: &FiniteMetricSpace<Rational>| gh_exact(x, y, None).unwrap().value;
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn gh_scales_linearly(a in space(2..=3, 1, 12, 4), b in space(2..=3, 1, 12, 4), c in 1i64..6) {
        let c = Rational::new(c as i128, 3);
        let base = gh_exact(&a, &b, None).unwrap().value;
        let scaled = gh_exact(&a.scale(c), &b.scale(c), None).unwrap().value;
        prop_assert_eq!(scaled, c * base);
    }

    #[test]
    fn gh_bounded_by_bijection_value(n in 2usize..5, seed_a in any::<u64>(), seed_b in any::<u64>()) {
        let gen = |seed: u64| {
            let mut edges = Vec::new();
            let mut s = seed;
            for i in 0..n {
                for j in (i + 1)..n {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    edges.push((i, j, Rational::new(((s >> 33) % 12 + 1) as i128, 4)));
                }
            }
            WeightedGraph::from_edges(n, edges).unwrap().metric(q(3)).unwrap()
        };
        let (a, b) = (gen(seed_a), gen(seed_b));
        let gh = gh_exact(&a, &b, None).unwrap();
        let bij = gh_bijection(&a, &b).unwrap();
        prop_assert!(gh.value <= bij.value);
        prop_assert_eq!(bij.reevaluate(&a, &b).unwrap(), bij.value);
    }

    #[test]
    fn hausdorff_matches_double_loop(m in space(2..=6, 1, 10, 2), a in prop::collection::vec(0usize..6, 1..4), b in prop::collection::vec(0usize..6, 1..4)) {
        let a: Vec<usize> = a.into_iter().map(|i| i % m.len()).collect();
        let b: Vec<usize> = b.into_iter().map(|i| i % m.len()).collect();
        let mut worst = q(0);
        for (from, to) in [(&a, &b), (&b, &a)] {
            for &x in from {
                let mut near: Option<Rational> = None;
                for &y in to {
                    let d = m.dist(x, y);
                    near = Some(match near { Some(v) if v <= d => v, _ => d });
                }
                if near.unwrap() > worst {
                    worst = near.unwrap();
                }
            }
        }
        prop_assert_eq!(hausdorff(&m, &a, &b).unwrap(), worst);
    }

    #[test]
    fn coefficient_norm_axioms(norm in coeff_norm(), x in vector(5), y in vector(5), t in -5.0f64..5.0) {
        let nx = norm.norm(&x);
        let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
        prop_assert!((norm.norm(&tx) - t.abs() * nx).abs() <= 1e-9 * (1.0 + nx * t.abs()));
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert!(norm.norm(&sum) <= nx + norm.norm(&y) + 1e-9);
        prop_assert!(l2(&x) <= nx + 1e-12);
        prop_assert!(nx <= ALPHA_DELTA_MAX * l2(&x) + 1e-12);
    }

    #[test]
    fn partial_cost_monotone_and_symmetric(
        m in space(2..=4, 1, 12, 4),
        n in space(2..=4, 1, 12, 4),
        moves in prop::collection::vec((0usize..4, 0usize..4), 1..6),
    ) {
        let xs: Vec<usize> = moves.iter().map(|&(x, _)| x % m.len()).collect();
        let ys: Vec<usize> = moves.iter().map(|&(_, y)| y % n.len()).collect();
        let mut previous = q(0);
        for k in 0..=xs.len() {
            let c = partial_cost(&xs[..k], &ys[..k], &m, &n).unwrap();
            prop_assert!(previous <= c);
            prop_assert_eq!(c, partial_cost(&ys[..k], &xs[..k], &n, &m).unwrap());
            previous = c;
        }
    }

    #[test]
    fn partial_cost_transitivity(
        a in space(2..=4, 1, 12, 4),
        b in space(2..=4, 1, 12, 4),
        c in space(2..=4, 1, 12, 4),
        moves in prop::collection::vec((0usize..4, 0usize..4, 0usize..4), 1..6),
    ) {
        let xs: Vec<usize> = moves.iter().map(|t| t.0 % a.len()).collect();
        let ys: Vec<usize> = moves.iter().map(|t| t.1 % b.len()).collect();
        let zs: Vec<usize> = moves.iter().map(|t| t.2 % c.len()).collect();
        let direct = partial_cost(&xs, &zs, &a, &c).unwrap();
        let via = partial_cost(&xs, &ys, &a, &b).unwrap() + partial_cost(&ys, &zs, &b, &c).unwrap();
        prop_assert!(direct <= via);
    }

    #[test]
    fn game_value_dominates_cost_and_grows_with_depth(
        m in space(1..=3, 1, 12, 4),
        n in space(1..=3, 1, 12, 4),
        x in 0usize..3,
        y in 0usize..3,
    ) {
        let (xs, ys) = ([x % m.len()], [y % n.len()]);
        let mut solver = GameSolver::new(&m, &n).unwrap();
        let cost = partial_cost(&xs, &ys, &m, &n).unwrap();
        let mut previous = cost;
        for depth in 0..4 {
            let v = solver.value(&xs, &ys, depth).unwrap();
            prop_assert!(previous <= v);
            previous = v;
        }
        prop_assert_eq!(solver.monotonicity_violations(), 0);
    }

    #[test]
    fn documents_round_trip(m in space(1..=6, 1, 30, 7)) {
        let back: FiniteMetricSpace<Rational> = metric_from_json(&metric_to_json(&m, None)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn separation_gadget_respects_isometries(m in space(1..=3, 1, 12, 4), p in 1i64..4) {
        let perm: Vec<usize> = (0..m.len()).rev().collect();
        let params = SeparationGadgetParams { p: q(p), copies: 2 };
        let g1 = separate(&m, params).unwrap();
        let g2 = separate(&m.permuted(&perm).unwrap(), params).unwrap();
        prop_assert!(g1.space.in_class(&ClassBounds::lower(q(p))));
        prop_assert_eq!(gh_exact(&g1.space, &g2.space, None).unwrap().value, q(0));
    }

    #[test]
    fn bound_gadget_lands_in_m3(m in space(2..=3, 20, 28, 4)) {
        let g = bound(&m).unwrap();
        prop_assert!(g.space.in_class(&ClassBounds::upper(q(3))));
        prop_assert!(FiniteMetricSpace::validate(g.space.to_matrix()).is_ok());
    }

    #[test]
    fn level_zero_slice_is_capped_input(m in space(2..=4, 1, 12, 8)) {
        let g = lipschitz_gadget(&m, LevelGadgetParams { k_min: -1, k_max: 1 }).unwrap();
        prop_assert!(FiniteMetricSpace::validate(g.space.to_matrix()).is_ok());
        let at = |i| g.index_of(&LevelPoint::Level { i, k: 0 }).unwrap();
        for i in 0..m.len() {
            for j in 0..m.len() {
                prop_assert_eq!(g.space.dist(at(i), at(j)), m.dist(i, j).min_of(q(1)));
            }
        }
    }
}
