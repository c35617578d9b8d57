// A reduced benchmark sweep over size profiles, averaged per method.
//
//     cargo run --release --example synthetic_benchmark

use corrclust::experiment::{run_benchmark, summarize, BenchmarkConfig};
use corrclust::metrics::{gini, size_ratio};
use corrclust::synthgen::{make_sizes, SizeProfile};

pub fn run_example() -> corrclust::Result<()> {
    let profiles = vec![SizeProfile::HighSkew, SizeProfile::moderate(), SizeProfile::Uniform];
    for p in &profiles {
        let sizes = make_sizes(170, 5, p)?;
        println!(
            "{:<10} sizes {:?} gini {:.3} ratio {:.2}",
            p.name(),
            sizes,
            gini(&sizes)?,
            size_ratio(&sizes)?
        );
    }

    let cfg = BenchmarkConfig {
        n: 30,
        ks: vec![3, 6],
        profiles,
        seeds: 2,
        master_seed: 42,
        ..BenchmarkConfig::default()
    };
    let rows = run_benchmark(&cfg)?;
    println!("\n{} runs", rows.len());
    println!("{:<10} {:>2} {:<14} {:>6} {:>6}", "profile", "k", "method", "nmi", "Q");
    for s in summarize(&rows) {
        println!(
            "{:<10} {:>2} {:<14} {:>6.3} {:>6.3}",
            s.profile, s.k, s.method, s.mean_nmi, s.mean_modularity
        );
    }
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
