//! The level gadgets: copies of a space at levels `k`, scaled by `2^k` and
//! capped at 1, stacked 10 apart, plus a distinguished point ♣.

use metriclab::distances::gh_exact;
use metriclab::reductions::{hl_gadget, lipschitz_gadget, LevelGadgetParams, LevelPoint};
use metriclab::{FiniteMetricSpace, Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = FiniteMetricSpace::validate(vec![
        vec![Rational::from_i64(0), Rational::new(3, 4)],
        vec![Rational::new(3, 4), Rational::from_i64(0)],
    ])?;
    let g = lipschitz_gadget(
        &m,
        LevelGadgetParams {
            k_min: -1,
            k_max: 1,
        },
    )?;
    let at = |i, k| {
        g.index_of(&LevelPoint::Level { i, k })
            .expect("point exists")
    };
    let club = g.index_of(&LevelPoint::Club).expect("club exists");
    println!(
        "{} points: {:?}",
        g.len(),
        g.space.labels().unwrap_or_default()
    );
    println!("d((0,0), club) = {}", g.space.dist(at(0, 0), club));
    println!("d((0,1), (1,-1)) = {}", g.space.dist(at(0, 1), at(1, -1)));

    let h = hl_gadget(
        &m,
        LevelGadgetParams {
            k_min: -2,
            k_max: 0,
        },
    )?;
    println!("hl gadget: {} points", h.len());

    // Isometric inputs give isometric gadgets.
    let swapped = m.permuted(&[1, 0])?;
    let g2 = lipschitz_gadget(
        &swapped,
        LevelGadgetParams {
            k_min: -1,
            k_max: 1,
        },
    )?;
    println!(
        "gh between gadgets of isometric inputs = {}",
        gh_exact(&g.space, &g2.space, None)?.value
    );
    Ok(())
}
