// The evaluation metrics on hand-checkable inputs.
//
//     cargo run --example metrics_tour

use corrclust::graph::{Partition, SignedGraph};
use corrclust::metrics::{gini, modularity, nmi, nmi_with, report, size_ratio, NmiNormalization};

pub fn run_example() -> corrclust::Result<()> {
    let g = SignedGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0), (1, 2, -0.5)])?;
    let truth = Partition::new(vec![0, 0, 1, 1]);
    let other = Partition::new(vec![0, 1, 0, 1]);

    println!("modularity(truth)      = {:.4}", modularity(&g, &truth)?);
    println!("modularity(one blob)   = {:.4}", modularity(&g, &Partition::single_cluster(4))?);
    println!("nmi(truth, truth)      = {}", nmi(&truth, &truth)?);
    println!("nmi(truth, other)      = {}", nmi(&truth, &other)?);
    let singletons = Partition::singletons(4);
    for norm in [
        NmiNormalization::Sqrt,
        NmiNormalization::Min,
        NmiNormalization::Max,
        NmiNormalization::Arithmetic,
    ] {
        println!(
            "nmi(truth, singletons) = {:.4} ({norm:?})",
            nmi_with(&truth, &singletons, norm)?
        );
    }
    for sizes in [[5usize, 5, 5, 5], [166, 1, 1, 1], [60, 43, 30, 22]] {
        println!(
            "sizes {:?}: gini {:.3}, ratio {:.2}",
            sizes,
            gini(&sizes)?,
            size_ratio(&sizes)?
        );
    }
    let r = report(&g, &truth, Some(&truth))?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
