// Classical baselines on the dissimilarity d = (1 - w) / 2, with k chosen by
// silhouette.
//
//     cargo run --example baselines_select_k

use corrclust::baselines::{select_k, to_dissimilarity, Baseline};
use corrclust::metrics::nmi;
use corrclust::synthgen::{generate, GenSpec, SizeProfile};

pub fn run_example() -> corrclust::Result<()> {
    let (g, truth) = generate(&GenSpec::new(40, 4, SizeProfile::moderate(), 3))?;
    let d = to_dissimilarity(&g);
    for method in Baseline::ALL {
        let sel = select_k(&d, method, 2..=8, 3)?;
        let scores: Vec<String> = sel
            .scores
            .iter()
            .map(|(k, s)| format!("{k}:{s:.2}"))
            .collect();
        println!(
            "{:<14} k={} silhouette={:.3} nmi={:.3}  [{}]",
            method.name(),
            sel.k,
            sel.silhouette,
            nmi(&sel.partition, &truth)?,
            scores.join(" ")
        );
    }
    let fixed = Baseline::Pam.run(&d, 4, 0)?;
    println!("pam with k=4: sizes {:?}", fixed.sizes());
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
