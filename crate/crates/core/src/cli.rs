//! Batch command line: `generate`, `cluster`, `benchmark`, `correlate`.
//!
//! Settings resolve as flags > config file > defaults. The config file is a
//! flat `key = value` list whose keys are long flag names. Every diagnostic
//! goes to stderr as `error[CODE]: message` and the exit status is 0 only on
//! success.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{
    run_benchmark, run_method, write_benchmark_csv, BenchmarkConfig, DatasetDescriptor,
    ExperimentReport, KChoice, Method,
};
use crate::gcsq::{ClusterConfig, PartitionJson};
use crate::graph::csv::{read_graph, write_graph_file};
use crate::graph::{Partition, SignedGraph};
use crate::ingest::{load_correlation_csv, load_feature_csv, pearson_matrix, PearsonOptions};
use crate::metrics::{gini, report, size_ratio};
use crate::qubo::{build_bipartition_qubo, ExactSolver, SimulatedAnnealing, SolverRegistry};
use crate::synthgen::{generate, GenSpec, SizeProfile, MODERATE_SPREAD};
use crate::VERSION;

#[derive(Debug, Parser)]
#[command(name = "corrclust", version, about = "Divisive QUBO correlation clustering toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed from which every run seed is derived [default: 0]
    #[arg(long, global = true)]
    pub master_seed: Option<u64>,
    /// Worker threads for batch runs; 0 uses all cores [default: 0]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output path (base path for `generate`)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format [default: json for cluster, csv for benchmark]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Flat `key = value` settings file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a planted-partition signed graph (CSV) and its truth (JSON)
    Generate(GenerateArgs),
    /// Cluster a graph CSV and print an experiment report
    Cluster(ClusterArgs),
    /// Sweep profiles x k x seeds over all methods into a long-format table
    Benchmark(BenchmarkArgs),
    /// Turn a samples x features CSV into a Pearson correlation graph CSV
    Correlate(CorrelateArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// uniform | moderate | high_skew | comma-separated sizes
    #[arg(long)]
    pub profile: Option<String>,
    /// Generator seed [default: --master-seed]
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub intra_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub intra_hi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub inter_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub inter_hi: Option<f64>,
    /// Sign-flip probability per edge
    #[arg(long)]
    pub noise: Option<f64>,
    /// Edge keep probability
    #[arg(long)]
    pub density: Option<f64>,
    /// Largest/smallest target for the moderate profile
    #[arg(long)]
    pub moderate_spread: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// auto | exact | sa
    #[arg(long)]
    pub solver: Option<String>,
    #[arg(long)]
    pub exact_cap: Option<usize>,
    #[arg(long)]
    pub sa_sweeps: Option<usize>,
    #[arg(long)]
    pub sa_restarts: Option<usize>,
    /// Splits are accepted when cut < -epsilon
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Dense weight-matrix CSV
    pub graph: PathBuf,
    /// gcsq | diana | agglomerative | pam
    #[arg(long)]
    pub method: Option<String>,
    /// Cluster count (classical methods only)
    #[arg(long)]
    pub k: Option<usize>,
    /// Select k by silhouette over LO..HI (classical methods only)
    #[arg(long)]
    pub select_k: Option<String>,
    /// Truth JSON (as written by `generate`) for NMI
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// First CSV row is a header
    #[arg(long)]
    pub header: bool,
    /// Input is a correlation matrix: range-check and clamp to [-1, 1]
    #[arg(long)]
    pub correlation: bool,
    /// Include the split trace in the report
    #[arg(long)]
    pub trace: bool,
    /// Also write the top-level bipartition QUBO as JSON
    #[arg(long)]
    pub export_qubo: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated cluster counts
    #[arg(long)]
    pub ks: Option<String>,
    /// Comma-separated profiles
    #[arg(long)]
    pub profiles: Option<String>,
    /// Instances per (profile, k)
    #[arg(long)]
    pub seeds: Option<usize>,
    /// Comma-separated methods
    #[arg(long)]
    pub methods: Option<String>,
    #[arg(long)]
    pub noise: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Samples x features CSV
    pub features: PathBuf,
    #[arg(long)]
    pub header: bool,
    /// Drop zero-variance features instead of failing
    #[arg(long)]
    pub drop_constant: bool,
    /// Keep each row with this probability (seeded by --master-seed)
    #[arg(long)]
    pub sample_rows: Option<f64>,
}

/// Sidecar written next to a generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthFile {
    pub labels: Vec<usize>,
    pub k: usize,
    pub spec: Option<GenSpec>,
    pub seed: Option<u64>,
}

impl TruthFile {
    pub fn partition(&self) -> Partition {
        Partition::new(self.labels.clone())
    }
}

/// Resolved settings with their provenance; echoed into reports.
struct Settings {
    file: BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut file = BTreeMap::new();
        let mut echo = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    msg: "expected `key = value`".into(),
                })?;
                let key = key.trim().trim_start_matches("--").replace('_', "-");
                file.insert(key, value.trim().to_owned());
            }
            echo.insert("config-file".into(), path.display().to_string());
        }
        Ok(Self { file, echo })
    }

    fn opt<T: FromStr + ToString>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>> {
        let value = match flag {
            Some(v) => Some(v),
            None => match self.file.get(key) {
                Some(raw) => Some(raw.parse::<T>().map_err(|_| {
                    Error::Usage(format!("config key `{key}`: cannot parse `{raw}`"))
                })?),
                None => None,
            },
        };
        if let Some(v) = &value {
            self.echo.insert(key.to_owned(), v.to_string());
        }
        Ok(value)
    }

    fn get<T: FromStr + ToString>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T> {
        Ok(match self.opt(key, flag)? {
            Some(v) => v,
            None => {
                self.echo.insert(key.to_owned(), default.to_string());
                default
            }
        })
    }

    fn flag(&mut self, key: &str, flag: bool) -> Result<bool> {
        let on = if flag { true } else { self.get(key, None, false)? };
        self.echo.insert(key.to_owned(), on.to_string());
        Ok(on)
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let msg = e.render().to_string();
            let msg = msg.trim().trim_start_matches("error: ");
            let _ = writeln!(stderr, "error[{}]: usage: {msg}", Error::Usage(String::new()).code());
            return 2;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.code());
            1
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut s = Settings::load(cli.global.config.as_deref())?;
    let master_seed = s.get("master-seed", cli.global.master_seed, 0u64)?;
    let jobs = s.get("jobs", cli.global.jobs, 0usize)?;
    let out = s.opt("out", cli.global.out.as_ref().map(|p| p.display().to_string()))?;
    let format = match s.opt("format", cli.global.format.map(format_name))? {
        Some(f) => Some(parse_format(&f)?),
        None => None,
    };
    let out = out.map(PathBuf::from);
    match cli.command {
        Command::Generate(a) => cmd_generate(a, &mut s, master_seed, out, stdout),
        Command::Cluster(a) => cmd_cluster(a, &mut s, master_seed, out, format, stdout),
        Command::Benchmark(a) => {
            cmd_benchmark(a, &mut s, master_seed, jobs, out, format, stdout, stderr)
        }
        Command::Correlate(a) => cmd_correlate(a, &mut s, master_seed, out, stdout),
    }
}

fn format_name(f: Format) -> String {
    match f {
        Format::Json => "json".into(),
        Format::Csv => "csv".into(),
    }
}

fn parse_format(s: &str) -> Result<Format> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(Error::Usage(format!("unknown format `{other}`"))),
    }
}

fn require_out(out: Option<PathBuf>, cmd: &str) -> Result<PathBuf> {
    out.ok_or_else(|| Error::Usage(format!("`{cmd}` requires --out")))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn with_extension(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_generate(
    a: GenerateArgs,
    s: &mut Settings,
    master_seed: u64,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let n = s.get("n", a.n, 60usize)?;
    let k = s.get("k", a.k, 5usize)?;
    let profile_name = s.get("profile", a.profile, "uniform".to_owned())?;
    let spread = s.get("moderate-spread", a.moderate_spread, MODERATE_SPREAD)?;
    let mut profile: SizeProfile = profile_name.parse()?;
    if let SizeProfile::Moderate { spread: sp } = &mut profile {
        *sp = spread;
    }
    let seed = s.get("seed", a.seed, master_seed)?;
    let mut spec = GenSpec::new(n, k, profile, seed);
    spec.intra = (
        s.get("intra-lo", a.intra_lo, spec.intra.0)?,
        s.get("intra-hi", a.intra_hi, spec.intra.1)?,
    );
    spec.inter = (
        s.get("inter-lo", a.inter_lo, spec.inter.0)?,
        s.get("inter-hi", a.inter_hi, spec.inter.1)?,
    );
    spec.noise_flip_prob = s.get("noise", a.noise, 0.0)?;
    spec.density = s.get("density", a.density, 1.0)?;
    let base = require_out(out, "generate")?;

    let (g, truth) = generate(&spec)?;
    let graph_path = with_extension(&base, ".csv");
    let truth_path = with_extension(&base, ".json");
    write_graph_file(&g, &graph_path)?;
    let sidecar = TruthFile {
        labels: truth.labels().to_vec(),
        k: truth.k(),
        seed: Some(spec.seed),
        spec: Some(spec),
    };
    write_file(&truth_path, serde_json::to_string_pretty(&sidecar)?.as_bytes())?;

    let sizes = truth.sizes();
    emit(
        stdout,
        &format!(
            "wrote {} and {}\nsizes: {:?}\ngini: {:.4}\nsize_ratio: {:.2}\n",
            graph_path.display(),
            truth_path.display(),
            sizes,
            gini(&sizes)?,
            size_ratio(&sizes)?
        ),
    )
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Usage(format!("bad k range `{s}` (expected LO..HI)"));
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn cluster_config(a: &SolverArgs, s: &mut Settings, seed: u64, trace: bool) -> Result<ClusterConfig> {
    let backend = s.get("solver", a.solver.clone(), "auto".to_owned())?;
    let exact = ExactSolver {
        cap: s.get("exact-cap", a.exact_cap, crate::qubo::DEFAULT_EXACT_CAP)?,
    };
    let sa = SimulatedAnnealing {
        sweeps: s.opt("sa-sweeps", a.sa_sweeps)?,
        restarts: s.get("sa-restarts", a.sa_restarts, 8usize)?,
        ..SimulatedAnnealing::default()
    };
    let registry = SolverRegistry::with_backends(exact, sa);
    let cfg = ClusterConfig {
        solver: registry.get(&backend)?,
        seed,
        epsilon: s.get("epsilon", a.epsilon, 1e-9)?,
        record_trace: trace,
        ..ClusterConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_cluster(
    a: ClusterArgs,
    s: &mut Settings,
    master_seed: u64,
    out: Option<PathBuf>,
    format: Option<Format>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let method_name = s
        .opt("method", a.method.clone())?
        .ok_or_else(|| Error::Usage("`cluster` requires --method".into()))?;
    let method: Method = method_name.parse()?;
    let k_fixed = s.opt("k", a.k)?;
    let k_range = s.opt("select-k", a.select_k.clone())?;
    let k = match (k_fixed, k_range) {
        (Some(_), Some(_)) => {
            return Err(Error::Usage("use either --k or --select-k, not both".into()))
        }
        (Some(k), None) => Some(KChoice::Fixed(k)),
        (None, Some(r)) => Some(KChoice::Select(parse_k_range(&r)?)),
        (None, None) => None,
    };
    match (method, &k) {
        (Method::Gcsq, Some(_)) => {
            return Err(Error::Usage(
                "gcsq chooses the number of clusters itself; --k/--select-k are not allowed".into(),
            ))
        }
        (Method::Baseline(b), None) => {
            return Err(Error::Usage(format!("{b} requires --k or --select-k")))
        }
        _ => {}
    }
    let header = s.flag("header", a.header)?;
    let correlation = s.flag("correlation", a.correlation)?;
    let trace = s.flag("trace", a.trace)?;
    let cfg = cluster_config(&a.solver, s, master_seed, trace)?;
    s.echo.insert("method".into(), method.name().into());

    let mut timings = BTreeMap::new();
    let t = Instant::now();
    let g: SignedGraph = if correlation {
        load_correlation_csv(&a.graph, header)?
    } else {
        read_graph(&a.graph, header)?
    };
    let truth = match &a.truth {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            let tf: TruthFile = serde_json::from_str(&text)?;
            if tf.labels.len() != g.n() {
                return Err(Error::DimensionMismatch {
                    expected: g.n(),
                    got: tf.labels.len(),
                });
            }
            s.echo.insert("truth".into(), p.display().to_string());
            Some(tf.partition())
        }
        None => None,
    };
    let dataset = DatasetDescriptor::file(&a.graph)?;
    timings.insert("load".to_owned(), t.elapsed().as_secs_f64());

    if let Some(path) = &a.export_qubo {
        let q = build_bipartition_qubo(&g);
        write_file(path, serde_json::to_string(&q.to_json())?.as_bytes())?;
    }

    let t = Instant::now();
    let run = run_method(&g, method, k.as_ref(), &cfg)?;
    timings.insert("cluster".to_owned(), t.elapsed().as_secs_f64());

    let t = Instant::now();
    let metrics = report(&g, &run.partition, truth.as_ref())?;
    timings.insert("metrics".to_owned(), t.elapsed().as_secs_f64());

    let rep = ExperimentReport {
        toolkit_version: VERSION.to_owned(),
        method: method.name().to_owned(),
        config: s.echo.clone(),
        dataset,
        metrics,
        timings,
        partition: PartitionJson::new(&run.partition, run.agreement, run.trace),
        k_scores: run.k_scores,
    };
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
        Format::Csv => report_csv(&rep),
    };
    if let Some(path) = out {
        write_file(&path, text.as_bytes())?;
    }
    emit(stdout, &text)
}

fn report_csv(r: &ExperimentReport) -> String {
    let m = &r.metrics;
    let nmi = m.nmi.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "method,k,agreement,modularity,gini,size_ratio,nmi\n{},{},{},{},{},{},{}\n",
        r.method, m.k, m.agreement, m.modularity, m.gini, m.size_ratio, nmi
    )
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|v| v.trim().to_owned())
        .filter(|v| !v.is_empty())
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_benchmark(
    a: BenchmarkArgs,
    s: &mut Settings,
    master_seed: u64,
    jobs: usize,
    out: Option<PathBuf>,
    format: Option<Format>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let n = s.get("n", a.n, 60usize)?;
    let ks = split_list(&s.get("ks", a.ks, "5,10,20".to_owned())?)
        .iter()
        .map(|v| {
            v.parse::<usize>()
                .map_err(|_| Error::Usage(format!("bad k `{v}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let profiles = split_list(&s.get("profiles", a.profiles, "high_skew,moderate,uniform".to_owned())?)
        .iter()
        .map(|p| p.parse::<SizeProfile>())
        .collect::<Result<Vec<_>>>()?;
    let seeds = s.get("seeds", a.seeds, 10usize)?;
    let methods = split_list(&s.get(
        "methods",
        a.methods,
        "gcsq,diana,agglomerative,pam".to_owned(),
    )?);
    let noise = s.get("noise", a.noise, 0.0)?;
    let cluster = cluster_config(&a.solver, s, master_seed, false)?;

    for name in &methods {
        if crate::experiment::NOT_IMPLEMENTED.contains(&name.as_str()) {
            let _ = writeln!(stderr, "note: method `{name}` is not implemented; rows are marked");
        }
    }
    let cfg = BenchmarkConfig {
        n,
        ks,
        profiles,
        seeds,
        methods,
        master_seed,
        noise_flip_prob: noise,
        cluster,
        jobs,
    };
    let rows = run_benchmark(&cfg)?;
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_benchmark_csv(&rows, &mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "toolkit_version": VERSION,
                "config": s.echo,
                "rows": rows,
            }))? + "\n"
        }
    };
    match out {
        Some(path) => {
            write_file(&path, text.as_bytes())?;
            emit(stdout, &format!("wrote {} rows to {}\n", rows.len(), path.display()))
        }
        None => emit(stdout, &text),
    }
}

fn cmd_correlate(
    a: CorrelateArgs,
    s: &mut Settings,
    master_seed: u64,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let header = s.flag("header", a.header)?;
    let drop_constant = s.flag("drop-constant", a.drop_constant)?;
    let sample = s.opt("sample-rows", a.sample_rows)?;
    let out = require_out(out, "correlate")?;
    let mut x = load_feature_csv(&a.features, header)?;
    if let Some(p) = sample {
        x = x.sample_rows(p, master_seed)?;
    }
    let g = pearson_matrix(&x, PearsonOptions { drop_constant })?;
    write_graph_file(&g, &out)?;
    let dropped = x.features() - g.n();
    emit(
        stdout,
        &format!(
            "wrote {}x{} correlation graph from {} samples to {}{}\n",
            g.n(),
            g.n(),
            x.samples(),
            out.display(),
            if dropped > 0 {
                format!(" ({dropped} constant feature(s) dropped)")
            } else {
                String::new()
            }
        ),
    )
}

#[doc(hidden)]
pub fn registry_names() -> Vec<String> {
    SolverRegistry::default().names().map(str::to_owned).collect()
}
