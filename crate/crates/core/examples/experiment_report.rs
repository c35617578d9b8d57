// The command line driven in-process: generate a graph, cluster it, read the
// JSON report back.
//
//     cargo run --example experiment_report

use corrclust::experiment::ExperimentReport;

pub fn run_example() -> corrclust::Result<()> {
    let dir = tempfile::tempdir().map_err(|e| corrclust::Error::Usage(e.to_string()))?;
    let base = dir.path().join("planted");
    let base = base.to_str().expect("utf-8 temp path");
    let graph = format!("{base}.csv");
    let truth = format!("{base}.json");

    let mut out = Vec::new();
    let mut err = Vec::new();
    let steps: [&[&str]; 2] = [
        &["generate", "--n", "24", "--k", "4", "--profile", "moderate", "--out", base],
        &["cluster", &graph, "--method", "gcsq", "--truth", &truth, "--trace"],
    ];
    for args in steps {
        out.clear();
        let code = corrclust::cli::run(
            std::iter::once("corrclust").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        if code != 0 {
            return Err(corrclust::Error::Usage(String::from_utf8_lossy(&err).into_owned()));
        }
    }
    let report: ExperimentReport = serde_json::from_slice(&out)?;
    println!("method      {}", report.method);
    println!("dataset     {:?}", report.dataset);
    println!("metrics     {:?}", report.metrics);
    println!("timings     {:?}", report.timings);
    let splits = report.partition.trace.as_ref().map_or(0, |t| t.accepted_splits());
    println!("splits      {splits}");
    for (key, value) in &report.config {
        println!("config      {key} = {value}");
    }
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
