//! Hausdorff–Lipschitz closeness: find a witnessing correspondence, then turn
//! it into the certified upper bound φ₂(ε) by building the δ-net construction.

use metriclab::distances::{hl_close, hl_min_epsilon, hl_upper_from_witness, phi2};
use metriclab::{FiniteMetricSpace, Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = |p: i128, q: i128| Rational::new(p, q);
    let m = FiniteMetricSpace::validate(vec![
        vec![r(0, 1), r(1, 1), r(2, 1)],
        vec![r(1, 1), r(0, 1), r(3, 2)],
        vec![r(2, 1), r(3, 2), r(0, 1)],
    ])?;
    let n = FiniteMetricSpace::validate(vec![
        vec![r(0, 1), r(21, 20), r(2, 1)],
        vec![r(21, 20), r(0, 1), r(31, 20)],
        vec![r(2, 1), r(31, 20), r(0, 1)],
    ])?;
    let eps = r(1, 10);
    let close = hl_close(&m, &n, eps)?;
    let witness = close.witness.expect("the identity witnesses closeness");
    println!(
        "HL(1/10)-close via {:?}",
        witness.pairs().collect::<Vec<_>>()
    );

    let report = hl_upper_from_witness(&m, &n, eps, &witness, 0)?;
    for check in &report.checks {
        println!(
            "  {:<40} {:.6} <= {:.6} {}",
            check.name, check.value, check.bound, check.holds
        );
    }
    println!(
        "upper bound φ₂(0.1) = {:.6} (formula: {:.6})",
        report.phi2,
        phi2(0.1)
    );

    let (eps_min, _, exact) = hl_min_epsilon(&m, &n, 1_000_000)?;
    println!(
        "smallest ε = {} (exact: {exact}) = {:.4}",
        eps_min,
        eps_min.to_f64()
    );
    Ok(())
}
