//! Shortest-path completion of a weighted graph, capped at a constant.

use metriclab::graph::{graph_metric, WeightedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])?;
    println!(
        "cap 10:  d(0,2) = {}",
        graph_metric(&path, 10.0)?.dist(0, 2)
    );
    println!("cap 1.5: d(0,2) = {}", graph_metric(&path, 1.5)?.dist(0, 2));

    // Vertices in different components are at the cap.
    let split = WeightedGraph::from_edges(4, [(0, 1, 2.0), (2, 3, 2.0)])?;
    let m = graph_metric(&split, 3.0)?;
    for row in m.rows() {
        println!("{row:?}");
    }
    Ok(())
}
