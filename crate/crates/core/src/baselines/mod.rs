//! Classical comparison methods on the dissimilarity transform
//! `d_ij = (1 - w_ij) / 2` of a signed graph.

mod agglomerative;
mod diana;
mod pam;

pub use agglomerative::agglomerative;
pub use diana::diana;
pub use pam::{pam, pam_medoids};

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Partition, SignedGraph};

/// Symmetric `n × n` dissimilarities with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Wraps a row-major buffer, validating shape, symmetry and sign.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidGraph(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = data[i * n + j];
                if !v.is_finite() || v < 0.0 || v != data[j * n + i] {
                    return Err(Error::InvalidGraph(format!(
                        "invalid dissimilarity at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// `d = (1 - w) / 2`, with weights clamped into `[-1, 1]` first.
pub fn to_dissimilarity(g: &SignedGraph) -> DissimilarityMatrix {
    let n = g.n();
    let mut clamped = 0usize;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = g.weight(i, j);
            if !(-1.0..=1.0).contains(&w) {
                clamped += 1;
            }
            data[i * n + j] = (1.0 - w.clamp(-1.0, 1.0)) / 2.0;
        }
    }
    if clamped > 0 {
        log::warn!("clamped {} weights outside [-1, 1]", clamped / 2);
    }
    DissimilarityMatrix { n, data }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(())
}

/// Mean silhouette width. Nodes in singleton clusters contribute 0.
pub fn silhouette_score(d: &DissimilarityMatrix, p: &Partition) -> Result<f64> {
    if p.len() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            got: p.len(),
        });
    }
    if p.k() < 2 {
        return Err(Error::MetricUndefined(
            "silhouette needs at least two clusters".into(),
        ));
    }
    let labels = p.labels();
    let sizes = p.sizes();
    let mut sums = vec![0.0; p.k()];
    let mut total = 0.0;
    for i in 0..d.n() {
        let own = labels[i];
        if sizes[own] == 1 {
            continue;
        }
        sums.fill(0.0);
        for (j, &v) in d.row(i).iter().enumerate() {
            sums[labels[j]] += v;
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..p.k())
            .filter(|&c| c != own)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        if m > 0.0 {
            total += (b - a) / m;
        }
    }
    Ok(total / d.n() as f64)
}

/// Classical method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Baseline {
    Diana,
    Agglomerative,
    Pam,
}

impl Baseline {
    pub const ALL: [Baseline; 3] = [Baseline::Diana, Baseline::Agglomerative, Baseline::Pam];

    pub fn run(self, d: &DissimilarityMatrix, k: usize, seed: u64) -> Result<Partition> {
        match self {
            Baseline::Diana => diana(d, k),
            Baseline::Agglomerative => agglomerative(d, k),
            Baseline::Pam => pam(d, k, seed),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Baseline::Diana => "diana",
            Baseline::Agglomerative => "agglomerative",
            Baseline::Pam => "pam",
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diana" => Ok(Baseline::Diana),
            "agglomerative" => Ok(Baseline::Agglomerative),
            "pam" => Ok(Baseline::Pam),
            other => Err(Error::Usage(format!("unknown baseline `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSelection {
    pub k: usize,
    pub partition: Partition,
    pub silhouette: f64,
    /// `(k, silhouette)` for every candidate tried.
    pub scores: Vec<(usize, f64)>,
}

/// Runs `method` for each `k` in range (restricted to `2..=n`) and keeps the
/// best silhouette. Ties go to the smaller `k`.
pub fn select_k(
    d: &DissimilarityMatrix,
    method: Baseline,
    k_range: RangeInclusive<usize>,
    seed: u64,
) -> Result<KSelection> {
    let lo = (*k_range.start()).max(2);
    let hi = (*k_range.end()).min(d.n());
    if lo > hi {
        return Err(Error::Usage(format!(
            "empty k range {}..={} for {} nodes",
            k_range.start(),
            k_range.end(),
            d.n()
        )));
    }
    let mut best: Option<KSelection> = None;
    let mut scores = Vec::new();
    for k in lo..=hi {
        let p = method.run(d, k, seed)?;
        let s = silhouette_score(d, &p)?;
        scores.push((k, s));
        if best.as_ref().is_none_or(|b| s > b.silhouette) {
            best = Some(KSelection {
                k,
                partition: p,
                silhouette: s,
                scores: Vec::new(),
            });
        }
    }
    let mut best = best.expect("range is non-empty");
    best.scores = scores;
    Ok(best)
}
