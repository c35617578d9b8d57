// Band-like features: blocks of noisy copies of a shared signal. Pearson
// correlation turns them into a signed graph, which is then clustered.
//
//     cargo run --release --example band_correlation

use corrclust::baselines::{select_k, to_dissimilarity, Baseline};
use corrclust::gcsq::{cluster, ClusterConfig};
use corrclust::ingest::{pearson_matrix, PearsonOptions};
use corrclust::metrics::{modularity, nmi};
use corrclust::synthgen::{band_features, BandSpec};

pub fn run_example() -> corrclust::Result<()> {
    let spec = BandSpec::new(200, 30, 4, 11);
    let (x, truth) = band_features(&spec)?;
    let g = pearson_matrix(&x, PearsonOptions::default())?;
    let (pos, neg) = g.edges().fold((0, 0), |(p, n), (_, _, w)| {
        if w > 0.0 { (p + 1, n) } else { (p, n + 1) }
    });
    println!("{} bands, {pos} positive and {neg} negative correlations", g.n());

    let c = cluster(&g, &ClusterConfig::default().seed(11))?;
    println!(
        "gcsq           k={:<2} Q={:.3} nmi={:.3}",
        c.partition.k(),
        modularity(&g, &c.partition)?,
        nmi(&c.partition, &truth)?
    );
    let d = to_dissimilarity(&g);
    for b in Baseline::ALL {
        let sel = select_k(&d, b, 2..=8, 11)?;
        println!(
            "{:<14} k={:<2} Q={:.3} nmi={:.3}",
            b.name(),
            sel.k,
            modularity(&g, &sel.partition)?,
            nmi(&sel.partition, &truth)?
        );
    }
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
