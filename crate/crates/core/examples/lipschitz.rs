//! Lipschitz distance: the best log-dilation over bijections.

use metriclab::distances::{lipschitz_constants, lipschitz_exact};
use metriclab::FiniteMetricSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = std::f64::consts::E;
    let a = FiniteMetricSpace::validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let b = FiniteMetricSpace::validate(vec![vec![0.0, e], vec![e, 0.0]])?;
    println!("lip(1, e) = {}", lipschitz_exact(&a, &b)?.value);

    let m = FiniteMetricSpace::validate(vec![
        vec![0.0, 2.0, 3.0],
        vec![2.0, 0.0, 4.0],
        vec![3.0, 4.0, 0.0],
    ])?;
    let n = FiniteMetricSpace::validate(vec![
        vec![0.0, 2.2, 3.0],
        vec![2.2, 0.0, 3.5],
        vec![3.0, 3.5, 0.0],
    ])?;
    let cert = lipschitz_exact(&m, &n)?;
    println!("{}", serde_json::to_string_pretty(&cert.to_json())?);
    let (forward, backward) =
        lipschitz_constants(&m, &n, cert.witness.as_deref().unwrap_or(&[0, 1, 2]))?;
    println!("Lip(T) = {forward:.4}, Lip(T^-1) = {backward:.4}");

    let single = FiniteMetricSpace::<f64>::singleton();
    println!(
        "different sizes: {}",
        lipschitz_exact(&single, &m)?.to_json()["value"]
    );
    Ok(())
}
