//! The finite distance game: Player I names points, Player II answers, and
//! the minimax cost at full depth equals the Gromov–Hausdorff distance.

use metriclab::games::{duality_check, game_value, game_winner, partial_cost, GameSolver};
use metriclab::{FiniteMetricSpace, Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = |v: i64| Rational::from_i64(v);
    let a = FiniteMetricSpace::validate(vec![vec![q(0), q(1)], vec![q(1), q(0)]])?;
    let b = FiniteMetricSpace::validate(vec![vec![q(0), q(3)], vec![q(3), q(0)]])?;
    println!(
        "cost of (0,1) ~ (0,1): {}",
        partial_cost(&[0, 1], &[0, 1], &a, &b)?
    );
    for depth in 0..=4 {
        println!(
            "value at depth {depth}: {}",
            game_value(&a, &b, &[], &[], depth)?
        );
    }
    println!("II wins with eps = 1:   {}", game_winner(&a, &b, q(1), 4)?);
    println!(
        "II wins with eps = 3/2: {}",
        game_winner(&a, &b, Rational::new(3, 2), 4)?
    );

    let tri = FiniteMetricSpace::validate(vec![
        vec![q(0), q(2), q(3)],
        vec![q(2), q(0), q(4)],
        vec![q(3), q(4), q(0)],
    ])?;
    let report = duality_check(&tri, &b)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json())?);

    let mut solver = GameSolver::new(&tri, &b)?;
    let plain = solver.value(&[], &[], 3)?;
    let ordinal = solver.ordinal_value(&[], &[], 3)?;
    println!("decrement-by-one rule: {plain}, any-smaller-depth rule: {ordinal}");
    Ok(())
}
