//! The Kadets gadget of a normed plane: sphere points at their norm distance,
//! with one extra point per (family, member) recording averaged sums.

use metriclab::normlab::NormOracle;
use metriclab::reductions::{kadets_gadget, KadetsGadgetParams, KadetsPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plane = NormOracle::euclidean(2)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sphere_points = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![s, s], vec![-s, -s]];
    let params = KadetsGadgetParams {
        sphere_points,
        families: vec![vec![0, 1], vec![0, 2], vec![3]],
    };
    let g = kadets_gadget(&plane, &params)?;
    let p = |family, k| {
        g.index_of(&KadetsPoint::Path { family, k })
            .expect("point exists")
    };
    println!(
        "{} points: {:?}",
        g.len(),
        g.space.labels().unwrap_or_default()
    );
    println!(
        "same family, x0 + x1 = 0:    {}",
        g.space.dist(p(0, 0), p(0, 1))
    );
    println!(
        "same family, |x0 + x2| / 2:  {:.6}",
        g.space.dist(p(1, 0), p(1, 2))
    );
    println!(
        "different families:          {}",
        g.space.dist(p(0, 0), p(2, 3))
    );
    println!(
        "x1 to p(F2, 3):              {:.6}",
        g.space.dist(1, p(2, 3))
    );
    Ok(())
}
