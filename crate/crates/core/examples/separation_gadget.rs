//! The separation gadget: copies of every point with `p` added to all
//! distances, so the output lies in `M_p`.

use metriclab::distances::gh_exact;
use metriclab::reductions::{separate, SeparationGadgetParams};
use metriclab::{ClassBounds, FiniteMetricSpace, Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = |v: i64| Rational::from_i64(v);
    let m = FiniteMetricSpace::validate(vec![
        vec![q(0), q(1), q(2)],
        vec![q(1), q(0), q(2)],
        vec![q(2), q(2), q(0)],
    ])?;
    let n = FiniteMetricSpace::validate(vec![
        vec![q(0), q(2), q(2)],
        vec![q(2), q(0), q(3)],
        vec![q(2), q(3), q(0)],
    ])?;
    let params = SeparationGadgetParams { p: q(1), copies: 2 };
    let (gm, gn) = (separate(&m, params)?, separate(&n, params)?);
    println!("gadget points: {:?}", gm.space.labels().unwrap_or_default());
    println!(
        "gadget in M_1^3: {}",
        gm.space
            .in_class(&ClassBounds::between(q(1), q(3)).expect("1 < 3"))
    );
    println!("gh(inputs)  = {}", gh_exact(&m, &n, None)?.value);
    println!(
        "gh(gadgets) = {}",
        gh_exact(&gm.space, &gn.space, None)?.value
    );
    Ok(())
}
