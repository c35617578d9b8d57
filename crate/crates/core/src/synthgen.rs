//! Synthetic signed graphs with a planted partition.
//!
//! Nodes are laid out in contiguous blocks. Edges inside a block are drawn
//! from a positive range and edges across blocks from a negative range, so
//! without noise the planted partition is the unique max-agreement
//! clustering. Block sizes follow one of the skew profiles.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Partition, SignedGraph};
use crate::ingest::FeatureMatrix;
use crate::seed::{derive_seed, rng};

/// Largest/smallest block ratio targeted by the moderate profile.
pub const MODERATE_SPREAD: f64 = 3.95;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeProfile {
    /// Sizes differ by at most one.
    Uniform,
    /// Geometric sizes whose largest/smallest ratio is about `spread`.
    Moderate { spread: f64 },
    /// One block of `n - (k - 1)` nodes, the rest singletons.
    HighSkew,
    /// Geometric sizes with a fixed step ratio between consecutive blocks.
    Geometric { ratio: f64 },
    Explicit(Vec<usize>),
}

impl SizeProfile {
    pub fn moderate() -> Self {
        SizeProfile::Moderate {
            spread: MODERATE_SPREAD,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SizeProfile::Uniform => "uniform",
            SizeProfile::Moderate { .. } => "moderate",
            SizeProfile::HighSkew => "high_skew",
            SizeProfile::Geometric { .. } => "geometric",
            SizeProfile::Explicit(_) => "explicit",
        }
    }
}

impl fmt::Display for SizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SizeProfile {
    type Err = Error;

    /// Accepts `uniform`, `moderate`, `high_skew` (or `high-skew`) and a
    /// comma-separated size list such as `5,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(SizeProfile::Uniform),
            "moderate" => Ok(SizeProfile::moderate()),
            "high_skew" | "high-skew" => Ok(SizeProfile::HighSkew),
            other if other.contains(',') || other.parse::<usize>().is_ok() => other
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidSpec(format!("bad size `{v}`")))
                })
                .collect::<Result<Vec<_>>>()
                .map(SizeProfile::Explicit),
            other => Err(Error::InvalidSpec(format!("unknown profile `{other}`"))),
        }
    }
}

/// Block sizes for `n` nodes in `k` blocks, largest first for the skewed
/// profiles.
pub fn make_sizes(n: usize, k: usize, profile: &SizeProfile) -> Result<Vec<usize>> {
    if k == 0 || n < k {
        return Err(Error::InvalidSpec(format!(
            "cannot place {n} nodes into {k} non-empty clusters"
        )));
    }
    let sizes = match profile {
        SizeProfile::Uniform => (0..k).map(|c| n / k + usize::from(c < n % k)).collect(),
        SizeProfile::HighSkew => {
            let mut s = vec![1; k];
            s[0] = n - (k - 1);
            s
        }
        SizeProfile::Moderate { spread } => {
            if *spread < 1.0 || !spread.is_finite() {
                return Err(Error::InvalidSpec(format!("spread must be >= 1, got {spread}")));
            }
            let ratio = if k > 1 {
                spread.powf(1.0 / (k - 1) as f64)
            } else {
                1.0
            };
            geometric_sizes(n, k, ratio)
        }
        SizeProfile::Geometric { ratio } => {
            if *ratio < 1.0 || !ratio.is_finite() {
                return Err(Error::InvalidSpec(format!("ratio must be >= 1, got {ratio}")));
            }
            geometric_sizes(n, k, *ratio)
        }
        SizeProfile::Explicit(sizes) => {
            if sizes.len() != k || sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
                return Err(Error::InvalidSpec(format!(
                    "explicit sizes {sizes:?} must be {k} positive values summing to {n}"
                )));
            }
            sizes.clone()
        }
    };
    Ok(sizes)
}

/// Sizes proportional to `ratio^(k-1-c)`, rounded by largest remainder with a
/// floor of one node per block.
fn geometric_sizes(n: usize, k: usize, ratio: f64) -> Vec<usize> {
    let weights: Vec<f64> = (0..k).map(|c| ratio.powi((k - 1 - c) as i32)).collect();
    let total: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| w / total * n as f64).collect();
    let mut sizes: Vec<usize> = exact.iter().map(|&e| (e.floor() as usize).max(1)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut sum: usize = sizes.iter().sum();
    let mut idx = 0;
    while sum < n {
        sizes[order[idx % k]] += 1;
        sum += 1;
        idx += 1;
    }
    while sum > n {
        let largest = (0..k).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap();
        sizes[largest] -= 1;
        sum -= 1;
    }
    sizes
}

/// Planted-partition signed graph parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub profile: SizeProfile,
    /// Range for edges inside a block, within `(0, 1]`.
    pub intra: (f64, f64),
    /// Range for edges across blocks, within `[-1, 0)`.
    pub inter: (f64, f64),
    /// Probability that an edge's sign is flipped.
    pub noise_flip_prob: f64,
    /// Probability that an edge is kept at all.
    pub density: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, k: usize, profile: SizeProfile, seed: u64) -> Self {
        Self {
            n,
            k,
            profile,
            intra: (0.2, 1.0),
            inter: (-1.0, -0.2),
            noise_flip_prob: 0.0,
            density: 1.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        let (lo, hi) = self.intra;
        if !(lo > 0.0 && lo <= hi && hi <= 1.0) {
            return bad(format!("intra range [{lo}, {hi}] must lie in (0, 1]"));
        }
        let (lo, hi) = self.inter;
        if !(lo >= -1.0 && lo <= hi && hi < 0.0) {
            return bad(format!("inter range [{lo}, {hi}] must lie in [-1, 0)"));
        }
        if !(0.0..0.5).contains(&self.noise_flip_prob) {
            return bad(format!("noise {} must be in [0, 0.5)", self.noise_flip_prob));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad(format!("density {} must be in (0, 1]", self.density));
        }
        make_sizes(self.n, self.k, &self.profile).map(|_| ())
    }
}

/// Generates the graph and its planted partition. Identical specs give
/// bit-identical graphs.
pub fn generate(spec: &GenSpec) -> Result<(SignedGraph, Partition)> {
    spec.validate()?;
    let sizes = make_sizes(spec.n, spec.k, &spec.profile)?;
    let labels: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    let n = spec.n;
    let mut r = rng(spec.seed);
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            // Draw every variate unconditionally so the stream layout does not
            // depend on density or noise settings.
            let keep = r.random::<f64>() < spec.density;
            let flip = r.random::<f64>() < spec.noise_flip_prob;
            let (lo, hi) = if labels[i] == labels[j] {
                spec.intra
            } else {
                spec.inter
            };
            let u: f64 = r.random();
            let mut w = lo + (hi - lo) * u;
            if flip {
                w = -w;
            }
            if keep {
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
    }
    let g = SignedGraph::from_row_major(n, &weights)?;
    Ok((g, Partition::new(labels)))
}

/// Correlated-feature generator resembling spectral bands: features in the
/// same block share a latent signal, so they are strongly positively
/// correlated, while features in different blocks are nearly uncorrelated
/// (or correlated by `block_correlation` between neighbouring blocks).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    pub samples: usize,
    pub features: usize,
    pub blocks: usize,
    pub profile: SizeProfile,
    /// Standard deviation of the per-feature noise relative to the signal.
    pub noise: f64,
    /// Correlation between the latent signals of adjacent blocks.
    pub block_correlation: f64,
    pub seed: u64,
}

impl BandSpec {
    pub fn new(samples: usize, features: usize, blocks: usize, seed: u64) -> Self {
        Self {
            samples,
            features,
            blocks,
            profile: SizeProfile::Uniform,
            noise: 0.5,
            block_correlation: 0.0,
            seed,
        }
    }
}

pub fn band_features(spec: &BandSpec) -> Result<(FeatureMatrix, Partition)> {
    let sizes = make_sizes(spec.features, spec.blocks, &spec.profile)?;
    if spec.noise.is_nan() || spec.noise < 0.0 || !(-1.0..=1.0).contains(&spec.block_correlation) {
        return Err(Error::InvalidSpec(
            "noise must be >= 0 and block correlation within [-1, 1]".into(),
        ));
    }
    let labels: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let (m, f) = (spec.samples, spec.features);
    let rho = spec.block_correlation;
    let mut latent_rng = rng(derive_seed(spec.seed, 0));
    let mut latent = vec![0.0; m * spec.blocks];
    for s in 0..m {
        let mut prev: f64 = normal.sample(&mut latent_rng);
        latent[s * spec.blocks] = prev;
        for b in 1..spec.blocks {
            let z: f64 = normal.sample(&mut latent_rng);
            prev = rho * prev + (1.0 - rho * rho).sqrt() * z;
            latent[s * spec.blocks + b] = prev;
        }
    }
    let mut feat_rng = rng(derive_seed(spec.seed, 1));
    let gains: Vec<f64> = (0..f).map(|_| feat_rng.random_range(0.5..1.5)).collect();
    let offsets: Vec<f64> = (0..f).map(|_| feat_rng.random_range(0.0..10.0)).collect();
    let mut data = vec![0.0; m * f];
    for s in 0..m {
        for j in 0..f {
            let e: f64 = normal.sample(&mut feat_rng);
            data[s * f + j] =
                offsets[j] + gains[j] * (latent[s * spec.blocks + labels[j]] + spec.noise * e);
        }
    }
    let x = FeatureMatrix::new(m, f, data, None)?;
    Ok((x, Partition::new(labels)))
}
