//! Upper-bounding the Banach–Mazur distance between two coefficient norms
//! through a coordinate permutation taken from a Gromov–Hausdorff witness.

use metriclab::distances::{gh_bijection, Witness};
use metriclab::normlab::{permutation_distortion, CoefficientNorm};
use metriclab::FiniteMetricSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FiniteMetricSpace::validate(vec![
        vec![0.0, 0.5, 0.75, 1.0],
        vec![0.5, 0.0, 0.625, 0.875],
        vec![0.75, 0.625, 0.0, 0.5],
        vec![1.0, 0.875, 0.5, 0.0],
    ])?;
    let g = f.permuted(&[2, 0, 3, 1])?.scale(0.9).to_matrix();
    let g = FiniteMetricSpace::validate(
        g.iter()
            .map(|row| {
                row.iter()
                    .map(|v| if *v == 0.0 { 0.0 } else { v.max(0.5) })
                    .collect()
            })
            .collect(),
    )?;
    let cert = gh_bijection(&f, &g)?;
    let Witness::Bijection(perm) = &cert.witness else {
        unreachable!()
    };
    let fnorm = CoefficientNorm::with_defaults(4, |n, m| f.dist(n, m))?;
    let gnorm = CoefficientNorm::with_defaults(4, |n, m| g.dist(n, m))?;
    let report = permutation_distortion(&fnorm, &gnorm, perm, 1000, 7)?;
    println!("gh_bijection = {:.6} with permutation {perm:?}", cert.value);
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    println!("4·δ·r = {:.9}", 4.0 * fnorm.delta() * cert.value);
    Ok(())
}
