//! Hausdorff distance between subsets of one metric space.

use metriclab::distances::hausdorff;
use metriclab::FiniteMetricSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let line = FiniteMetricSpace::validate(vec![
        vec![0.0, 1.0, 2.0, 3.0],
        vec![1.0, 0.0, 1.0, 2.0],
        vec![2.0, 1.0, 0.0, 1.0],
        vec![3.0, 2.0, 1.0, 0.0],
    ])?;
    println!("H({{0}}, {{2}}) = {}", hausdorff(&line, &[0], &[2])?);
    println!(
        "H({{0,1}}, {{2,3}}) = {}",
        hausdorff(&line, &[0, 1], &[2, 3])?
    );
    println!("H({{0,3}}, {{1}}) = {}", hausdorff(&line, &[0, 3], &[1])?);
    Ok(())
}
