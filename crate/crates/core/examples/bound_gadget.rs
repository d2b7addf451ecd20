//! The bounded gadget: a space in `M_5` becomes a space in `M^3` by joining
//! every pair of points with a unit-step path and capping the path metric.

use metriclab::distances::Witness;
use metriclab::distances::{distortion, gh_bijection};
use metriclab::reductions::{bound, bound_by_cases, bound_forward_correspondence, BoundPoint};
use metriclab::{ClassBounds, FiniteMetricSpace, Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = |p: i128, q: i128| Rational::new(p, q);
    let m = FiniteMetricSpace::validate(vec![
        vec![r(0, 1), r(5, 1), r(6, 1)],
        vec![r(5, 1), r(0, 1), r(13, 2)],
        vec![r(6, 1), r(13, 2), r(0, 1)],
    ])?;
    let n = FiniteMetricSpace::validate(vec![
        vec![r(0, 1), r(11, 2), r(6, 1)],
        vec![r(11, 2), r(0, 1), r(7, 1)],
        vec![r(6, 1), r(7, 1), r(0, 1)],
    ])?;
    let gm = bound(&m)?;
    println!(
        "{} points, in M^3: {}",
        gm.len(),
        gm.space
            .in_class(&ClassBounds::upper(Rational::from_i64(3)))
    );
    let p = gm
        .index_of(&BoundPoint::Path { i: 0, j: 1, k: -2 })
        .expect("d(0,1) = 5 gives k = -2..2");
    println!("d'(m0, p(0,1,-2)) = {}", gm.space.dist(0, p));
    println!(
        "graph route equals case formula: {}",
        bound_by_cases(&m)?.to_matrix() == gm.space.to_matrix()
    );

    // The correspondence from the forward direction of the reduction.
    let gn = bound(&n)?;
    let cert = gh_bijection(&m, &n)?;
    let Witness::Bijection(perm) = &cert.witness else {
        unreachable!()
    };
    let rel = bound_forward_correspondence(&gm, &gn, perm)?;
    println!("gh(M, N) = {}", cert.value);
    println!(
        "half distortion of the lifted correspondence = {}",
        distortion(&rel, &gm.space, &gn.space)?.half()
    );
    Ok(())
}
