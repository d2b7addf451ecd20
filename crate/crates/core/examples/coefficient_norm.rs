//! Coefficient renormings of Euclidean space and the `e_{n,m}` / `P_{n,m}`
//! geometry behind them.

use metriclab::normlab::{e_nm, euclidean_norm, pnm_member, pnm_radius, CoefficientNorm, Norm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let norm = CoefficientNorm::with_defaults(4, |n, m| if (n + m) % 2 == 0 { 0.5 } else { 1.0 })?;
    println!("alpha = {}, delta = {:.6}", norm.alpha(), norm.delta());
    for (n, m) in [(0, 1), (0, 2)] {
        let e = e_nm(n, m, 4)?;
        println!(
            "|e_{n}{m}|_f = {:.9}, h = {:.9}",
            norm.norm(&e),
            norm.h(n, m)
        );
    }
    let x = [1.0, -1.0, 0.0, 0.0];
    println!(
        "|e_0 - e_1|_f = {:.9} (euclidean {:.9})",
        norm.norm(&x),
        euclidean_norm(&x)
    );

    let (a, b, c) = (e_nm(0, 1, 4)?, e_nm(0, 2, 4)?, e_nm(2, 3, 4)?);
    let sub = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(p, q)| p - q).collect::<Vec<_>>();
    let add = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(p, q)| p + q).collect::<Vec<_>>();
    println!(
        "shared index: |e - e'| = {}, |e + e'| = {}",
        euclidean_norm(&sub(&a, &b)),
        euclidean_norm(&add(&a, &b))
    );
    println!(
        "disjoint:     |e - e'| = {}, |e + e'| = {}",
        euclidean_norm(&sub(&a, &c)),
        euclidean_norm(&add(&a, &c))
    );

    let h = norm.h(0, 1);
    println!("P_01 cap radius on the sphere: {:.6}", pnm_radius(h));
    println!("e_01 in P_01: {}", pnm_member(&a, 0, 1, &norm)?);
    println!("e_02 in P_01: {}", pnm_member(&b, 0, 1, &norm)?);
    println!("{}", norm.to_json());
    Ok(())
}
