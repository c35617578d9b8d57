// Cluster a small signed graph: two friendly groups that dislike each other.
//
//     cargo run --example quickstart

use corrclust::gcsq::{cluster, ClusterConfig};
use corrclust::graph::SignedGraph;

pub fn run_example() -> corrclust::Result<()> {
    let g = SignedGraph::from_edges(
        5,
        &[
            (0, 1, 1.0),
            (1, 2, 0.8),
            (0, 2, 0.6),
            (3, 4, 0.9),
            (0, 3, -1.0),
            (1, 4, -0.7),
            (2, 3, -0.4),
        ],
    )?;
    let result = cluster(&g, &ClusterConfig::default())?;
    println!("labels:    {:?}", result.partition.labels());
    println!("clusters:  {:?}", result.partition.clusters());
    println!("agreement: {:.2}", result.agreement);
    println!("solves:    {}", result.solves);
    assert_eq!(result.partition.labels(), &[0, 0, 0, 1, 1]);
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
