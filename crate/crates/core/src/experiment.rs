//! Method dispatch, self-describing experiment reports and the seeded
//! benchmark sweep over synthetic instances.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::{select_k, to_dissimilarity, Baseline};
use crate::error::{Error, Result};
use crate::gcsq::{cluster, ClusterConfig, PartitionJson, SplitTrace};
use crate::graph::{Partition, SignedGraph};
use crate::metrics::{modularity, nmi, MetricReport};
use crate::seed::derive_seed;
use crate::synthgen::{generate, GenSpec, SizeProfile};

/// Methods known by name but deliberately not provided.
pub const NOT_IMPLEMENTED: [&str; 2] = ["kmeans", "spectral"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Gcsq,
    Baseline(Baseline),
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Gcsq,
        Method::Baseline(Baseline::Diana),
        Method::Baseline(Baseline::Agglomerative),
        Method::Baseline(Baseline::Pam),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Gcsq => "gcsq",
            Method::Baseline(b) => b.name(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcsq" => Ok(Method::Gcsq),
            other if NOT_IMPLEMENTED.contains(&other) => {
                Err(Error::Usage(format!("method `{other}` is not implemented")))
            }
            other => other.parse().map(Method::Baseline).map_err(|_| {
                Error::Usage(format!(
                    "unknown method `{other}` (expected gcsq, diana, agglomerative or pam)"
                ))
            }),
        }
    }
}

/// How a classical method gets its cluster count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KChoice {
    Fixed(usize),
    /// Best silhouette over the range.
    Select(RangeInclusive<usize>),
}

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub partition: Partition,
    pub agreement: f64,
    pub trace: Option<SplitTrace>,
    /// `(k, silhouette)` candidates when k was selected.
    pub k_scores: Option<Vec<(usize, f64)>>,
    pub solves: Option<usize>,
}

/// Runs one method. The divisive engine chooses its own cluster count and
/// rejects `k`; classical methods require it.
pub fn run_method(
    g: &SignedGraph,
    method: Method,
    k: Option<&KChoice>,
    cfg: &ClusterConfig,
) -> Result<MethodRun> {
    match method {
        Method::Gcsq => {
            if k.is_some() {
                return Err(Error::Usage(
                    "gcsq determines the number of clusters itself; do not pass k".into(),
                ));
            }
            let c = cluster(g, cfg)?;
            let trace = (!c.trace.0.is_empty()).then_some(c.trace);
            Ok(MethodRun {
                partition: c.partition,
                agreement: c.agreement,
                trace,
                k_scores: None,
                solves: Some(c.solves),
            })
        }
        Method::Baseline(b) => {
            let d = to_dissimilarity(g);
            let (partition, k_scores) = match k {
                None => {
                    return Err(Error::Usage(format!(
                        "{b} needs a cluster count (k or a k range to select from)"
                    )))
                }
                Some(KChoice::Fixed(k)) => (b.run(&d, *k, cfg.seed)?, None),
                Some(KChoice::Select(range)) => {
                    let sel = select_k(&d, b, range.clone(), cfg.seed)?;
                    (sel.partition, Some(sel.scores))
                }
            };
            let agreement = g.intra_agreement(&partition)?;
            Ok(MethodRun {
                partition,
                agreement,
                trace: None,
                k_scores,
                solves: None,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DatasetDescriptor {
    Synthetic { spec: GenSpec },
    File { path: String, sha256: String },
}

impl DatasetDescriptor {
    pub fn file(path: &Path) -> Result<Self> {
        Ok(DatasetDescriptor::File {
            path: path.display().to_string(),
            sha256: sha256_file(path)?,
        })
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 8192];
    loop {
        let read = f.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if read == 0 {
            break;
        }
        hasher.update(&buf[..read]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Self-contained record of one clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub toolkit_version: String,
    pub method: String,
    /// Every setting that influenced the run, as given or defaulted.
    pub config: BTreeMap<String, String>,
    pub dataset: DatasetDescriptor,
    pub metrics: MetricReport,
    /// Wall-clock seconds per phase.
    pub timings: BTreeMap<String, f64>,
    pub partition: PartitionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_scores: Option<Vec<(usize, f64)>>,
}

/// One row of the long-format benchmark table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub profile: String,
    pub k: usize,
    pub seed: u64,
    pub method: String,
    pub nmi: Option<f64>,
    pub modularity: Option<f64>,
    /// Seconds.
    pub runtime: f64,
    pub found_k: Option<usize>,
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub n: usize,
    pub ks: Vec<usize>,
    pub profiles: Vec<SizeProfile>,
    pub seeds: usize,
    /// Method names; unimplemented ones produce `not_implemented` rows.
    pub methods: Vec<String>,
    pub master_seed: u64,
    pub noise_flip_prob: f64,
    pub cluster: ClusterConfig,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            n: 60,
            ks: vec![5, 10, 20],
            profiles: vec![SizeProfile::HighSkew, SizeProfile::moderate(), SizeProfile::Uniform],
            seeds: 10,
            methods: Method::ALL.iter().map(|m| m.name().to_owned()).collect(),
            master_seed: 0,
            noise_flip_prob: 0.0,
            cluster: ClusterConfig::default(),
            jobs: 0,
        }
    }
}

/// Sweeps profiles × k × seeds, running every method on each instance.
///
/// Instance `i` (in profile, k, seed order) is generated with
/// `derive_seed(master_seed, i)`, which is also the seed handed to the
/// methods, so the table does not depend on the worker count. Classical
/// methods receive the true k.
pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<Vec<BenchmarkRow>> {
    let mut methods = Vec::new();
    for name in &cfg.methods {
        match name.parse::<Method>() {
            Ok(m) => methods.push(Ok(m)),
            Err(_) if NOT_IMPLEMENTED.contains(&name.as_str()) => methods.push(Err(name.clone())),
            Err(e) => return Err(e),
        }
    }
    let mut instances = Vec::new();
    for profile in &cfg.profiles {
        for &k in &cfg.ks {
            for _ in 0..cfg.seeds {
                let seed = derive_seed(cfg.master_seed, instances.len() as u64);
                let mut spec = GenSpec::new(cfg.n, k, profile.clone(), seed);
                spec.noise_flip_prob = cfg.noise_flip_prob;
                spec.validate()?;
                instances.push(spec);
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let per_instance: Vec<Result<Vec<BenchmarkRow>>> = pool.install(|| {
        instances
            .par_iter()
            .map(|spec| run_instance(spec, &methods, &cfg.cluster))
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_instance {
        rows.extend(r?);
    }
    Ok(rows)
}

fn run_instance(
    spec: &GenSpec,
    methods: &[std::result::Result<Method, String>],
    base: &ClusterConfig,
) -> Result<Vec<BenchmarkRow>> {
    let (g, truth) = generate(spec)?;
    let cfg = ClusterConfig {
        seed: spec.seed,
        record_trace: false,
        ..base.clone()
    };
    let mut rows = Vec::with_capacity(methods.len());
    for m in methods {
        let row = |method: &str| BenchmarkRow {
            profile: spec.profile.name().to_owned(),
            k: spec.k,
            seed: spec.seed,
            method: method.to_owned(),
            nmi: None,
            modularity: None,
            runtime: 0.0,
            found_k: None,
            status: "ok".into(),
        };
        match m {
            Err(name) => rows.push(BenchmarkRow {
                status: "not_implemented".into(),
                ..row(name)
            }),
            Ok(method) => {
                let k = match method {
                    Method::Gcsq => None,
                    Method::Baseline(_) => Some(KChoice::Fixed(spec.k)),
                };
                let start = Instant::now();
                let run = run_method(&g, *method, k.as_ref(), &cfg)?;
                let runtime = start.elapsed().as_secs_f64();
                rows.push(BenchmarkRow {
                    nmi: Some(nmi(&run.partition, &truth)?),
                    modularity: modularity(&g, &run.partition).ok(),
                    runtime,
                    found_k: Some(run.partition.k()),
                    ..row(method.name())
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_benchmark_csv<W: std::io::Write>(rows: &[BenchmarkRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Usage(format!("csv output failed: {e}")))?;
    }
    w.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

/// Mean NMI and modularity per (profile, k, method).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub profile: String,
    pub k: usize,
    pub method: String,
    pub runs: usize,
    pub mean_nmi: f64,
    pub mean_modularity: f64,
}

/// Rows sharing a (profile, k, method) key, in first-seen order.
type Groups<'a> = Vec<((String, usize, String), Vec<&'a BenchmarkRow>)>;

pub fn summarize(rows: &[BenchmarkRow]) -> Vec<SummaryRow> {
    let mut groups: Groups = Vec::new();
    for r in rows.iter().filter(|r| r.status == "ok") {
        let key = (r.profile.clone(), r.k, r.method.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r),
            None => groups.push((key, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|((profile, k, method), rs)| {
            let mean = |f: &dyn Fn(&BenchmarkRow) -> Option<f64>| {
                let vals: Vec<f64> = rs.iter().filter_map(|r| f(r)).collect();
                vals.iter().sum::<f64>() / vals.len().max(1) as f64
            };
            SummaryRow {
                runs: rs.len(),
                mean_nmi: mean(&|r| r.nmi),
                mean_modularity: mean(&|r| r.modularity),
                profile,
                k,
                method,
            }
        })
        .collect()
}
