//! Validating distance matrices, class membership and scaling.

use metriclab::{ClassBounds, FiniteMetricSpace, MetricError, Rational, Scalar};

fn main() -> Result<(), MetricError> {
    let r = |p: i128, q: i128| Rational::new(p, q);
    let m = FiniteMetricSpace::validate(vec![
        vec![r(0, 1), r(5, 1), r(6, 1)],
        vec![r(5, 1), r(0, 1), r(13, 2)],
        vec![r(6, 1), r(13, 2), r(0, 1)],
    ])?;
    let smallest = m.min_distance().expect("more than one point");
    println!(
        "{} points, diameter {}, smallest distance {}",
        m.len(),
        m.diameter(),
        smallest
    );
    println!("in M_5: {}", m.in_class(&ClassBounds::lower(r(5, 1))));
    println!("in M^6: {}", m.in_class(&ClassBounds::upper(r(6, 1))));

    // Any space in M_p lands in M_5 after scaling by 5/p.
    let p = r(5, 2);
    let halved = m.scale(r(1, 2));
    let rescaled = halved.scale(Rational::from_i64(5) / p);
    println!(
        "scaled back into M_5: {}",
        rescaled.in_class(&ClassBounds::lower(r(5, 1)))
    );

    let bad = FiniteMetricSpace::validate(vec![
        vec![0.0, 3.0, 1.0],
        vec![3.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
    ]);
    println!("3 > 1 + 1 is rejected: {}", bad.unwrap_err());
    Ok(())
}
