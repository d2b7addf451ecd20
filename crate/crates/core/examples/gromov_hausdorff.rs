//! Exact Gromov–Hausdorff distance with a witnessing correspondence, and the
//! bijection-restricted variant.

use metriclab::distances::{gh_bijection, gh_exact};
use metriclab::{FiniteMetricSpace, Rational, Scalar};

fn space(rows: &[&[i64]]) -> FiniteMetricSpace<Rational> {
    FiniteMetricSpace::validate(
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect(),
    )
    .expect("valid metric")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = space(&[&[0, 1], &[1, 0]]);
    let b = space(&[&[0, 3], &[3, 0]]);
    let cert = gh_exact(&a, &b, None)?;
    println!(
        "gh(2-point 1, 2-point 3) = {} (exact: {})",
        cert.value, cert.exact
    );
    println!("{}", serde_json::to_string_pretty(&cert.to_json())?);

    let tri = space(&[&[0, 2, 3], &[2, 0, 4], &[3, 4, 0]]);
    let seg = space(&[&[0, 3], &[3, 0]]);
    let cert = gh_exact(&tri, &seg, None)?;
    println!(
        "gh(triangle, segment) = {} after {} search nodes",
        cert.value, cert.nodes
    );
    println!(
        "re-evaluated from the witness: {}",
        cert.reevaluate(&tri, &seg)?
    );

    let ones = FiniteMetricSpace::equilateral(3, Rational::from_i64(1))?;
    let twos = FiniteMetricSpace::equilateral(3, Rational::from_i64(2))?;
    println!(
        "gh_bijection(equilateral 1, equilateral 2) = {}",
        gh_bijection(&ones, &twos)?.value
    );
    Ok(())
}
