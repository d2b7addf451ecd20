//! The Banach–Mazur gadget of a finite symmetric set of vectors in a normed
//! plane: vector points 15 apart, joined by weighted paths that record the
//! norm of differences, scalar multiples and sums.

use metriclab::normlab::NormOracle;
use metriclab::reductions::{bm_gadget, k_weight, BmGadgetParams, BmPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "K weights: {} {} {}",
        k_weight(2.1, 1.0),
        k_weight(10.0, 1.0),
        k_weight(0.1, 1.0)
    );

    let plane = NormOracle::max_of_functionals(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], false)?;
    let vectors = vec![vec![1.0, 0.0], vec![-1.0, 0.0]];
    let params = BmGadgetParams::for_norm(&plane, vectors)?;
    println!("c sequence: {:?}", params.c);
    println!("rational index: {:?}", params.rational_index());
    let g = bm_gadget(&plane, &params)?;
    println!("{} points", g.len());
    println!("d(v0, v1) = {}", g.space.dist(0, 1));
    let f = g
        .index_of(&BmPoint::FPath { a: 0, q: 0, j: 1 })
        .expect("f-path exists");
    println!("d(v0, f(0,-1;1)) = {}", g.space.dist(0, f));
    println!("provenance: {}", g.provenance);
    Ok(())
}
