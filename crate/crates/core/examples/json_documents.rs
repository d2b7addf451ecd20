//! Reading and writing metric-space documents.

use metriclab::io::{metric_from_json, metric_to_json, read_metric, write_json};
use metriclab::reductions::separate;
use metriclab::reductions::SeparationGadgetParams;
use metriclab::{FiniteMetricSpace, Rational};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc =
        json!({"kind": "metric", "n": 2, "labels": ["a", "b"], "d": [[0, "1/3"], ["1/3", 0]]});
    let m: FiniteMetricSpace<Rational> = metric_from_json(&doc)?;
    println!("d(a, b) = {}", m.dist(0, 1));

    let g = separate(
        &m,
        SeparationGadgetParams {
            p: Rational::new(1, 2),
            copies: 2,
        },
    )?;
    let out = metric_to_json(&g.space, Some(&g.provenance));
    println!("{}", serde_json::to_string_pretty(&out)?);

    let path = std::env::temp_dir().join("metriclab-example.json");
    write_json(&path, &out)?;
    let back: FiniteMetricSpace<Rational> = read_metric(&path)?;
    println!("round trip preserved the space: {}", back == g.space);
    std::fs::remove_file(path)?;
    Ok(())
}
