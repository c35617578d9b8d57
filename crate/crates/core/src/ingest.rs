//! Feature matrices (samples × features) and their Pearson correlation graphs.

use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::csv::{read_table, read_table_from};
use crate::graph::SignedGraph;
use crate::seed::rng;

/// Tolerance beyond `[-1, 1]` accepted in precomputed correlation files.
pub const CORRELATION_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    samples: usize,
    features: usize,
    data: Vec<f64>,
    names: Option<Vec<String>>,
}

impl FeatureMatrix {
    /// Row-major `samples × features`. Needs at least two of each and finite
    /// entries.
    pub fn new(
        samples: usize,
        features: usize,
        data: Vec<f64>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if samples < 2 || features < 2 {
            return Err(Error::InvalidFeatures(format!(
                "need at least 2 samples and 2 features, got {samples} × {features}"
            )));
        }
        if data.len() != samples * features {
            return Err(Error::DimensionMismatch {
                expected: samples * features,
                got: data.len(),
            });
        }
        if let Some(p) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidFeatures(format!(
                "non-finite value at row {}, column {}",
                p / features,
                p % features
            )));
        }
        if let Some(names) = &names {
            if names.len() != features {
                return Err(Error::DimensionMismatch {
                    expected: features,
                    got: names.len(),
                });
            }
        }
        Ok(Self {
            samples,
            features,
            data,
            names,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], names: Option<Vec<String>>) -> Result<Self> {
        let features = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().position(|r| r.len() != features) {
            return Err(Error::InvalidFeatures(format!("row {r} has a different length")));
        }
        Self::new(rows.len(), features, rows.concat(), names)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn features(&self) -> usize {
        self.features
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    #[inline]
    pub fn get(&self, sample: usize, feature: usize) -> f64 {
        self.data[sample * self.features + feature]
    }

    pub fn column(&self, feature: usize) -> Vec<f64> {
        (0..self.samples).map(|s| self.get(s, feature)).collect()
    }

    /// Keeps each row independently with probability `p` (at least two rows
    /// are always kept).
    pub fn sample_rows(&self, p: f64, seed: u64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidFeatures(format!(
                "row sampling probability {p} must be in (0, 1]"
            )));
        }
        let mut r = rng(seed);
        let mut keep: Vec<usize> = (0..self.samples).filter(|_| r.random::<f64>() < p).collect();
        if keep.len() < 2 {
            keep = vec![0, 1];
        }
        let data = keep
            .iter()
            .flat_map(|&s| self.data[s * self.features..(s + 1) * self.features].iter().copied())
            .collect();
        Self::new(keep.len(), self.features, data, self.names.clone())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PearsonOptions {
    /// Drop zero-variance features (with a warning) instead of failing.
    pub drop_constant: bool,
}

/// Pearson correlation graph over the features.
///
/// Two-pass: column means first, then centered cross products. With
/// `drop_constant` the surviving features keep their original indices as
/// node ids.
pub fn pearson_matrix(x: &FeatureMatrix, opts: PearsonOptions) -> Result<SignedGraph> {
    let (m, f) = (x.samples, x.features);
    let mut centered: Vec<Vec<f64>> = Vec::with_capacity(f);
    let mut norms = Vec::with_capacity(f);
    let mut kept = Vec::with_capacity(f);
    for j in 0..f {
        let col = x.column(j);
        let mean = col.iter().sum::<f64>() / m as f64;
        let c: Vec<f64> = col.iter().map(|v| v - mean).collect();
        let ss: f64 = c.iter().map(|v| v * v).sum();
        let scale = col.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if ss == 0.0 || ss.sqrt() <= 1e-13 * scale * (m as f64).sqrt() {
            if opts.drop_constant {
                log::warn!("dropping constant feature {j}");
                continue;
            }
            return Err(Error::ConstantFeature { index: j });
        }
        centered.push(c);
        norms.push(ss);
        kept.push(j);
    }
    if kept.is_empty() {
        return Err(Error::InvalidFeatures("all features are constant".into()));
    }
    let n = kept.len();
    let mut w = vec![0.0; n * n];
    for a in 0..n {
        for b in (a + 1)..n {
            let cov: f64 = centered[a].iter().zip(&centered[b]).map(|(u, v)| u * v).sum();
            let r = (cov / (norms[a] * norms[b]).sqrt()).clamp(-1.0, 1.0);
            w[a * n + b] = r;
            w[b * n + a] = r;
        }
    }
    SignedGraph::from_row_major(n, &w)?.with_node_ids(kept)
}

/// Rows are samples and columns features; a header row supplies names.
pub fn load_feature_csv(path: &Path, has_header: bool) -> Result<FeatureMatrix> {
    let t = read_table(path, has_header)?;
    FeatureMatrix::from_rows(&t.rows, t.header)
}

/// Loads a precomputed correlation matrix. Values more than
/// [`CORRELATION_SLACK`] outside `[-1, 1]` are rejected, the rest clamped;
/// the matrix is then symmetrized and its diagonal zeroed.
pub fn load_correlation_csv(path: &Path, has_header: bool) -> Result<SignedGraph> {
    let t = read_table(path, has_header)?;
    correlation_from_rows(t.rows)
}

pub fn correlation_from_reader<R: std::io::Read>(reader: R, has_header: bool) -> Result<SignedGraph> {
    let t = read_table_from(reader, has_header, Path::new("<input>"))?;
    correlation_from_rows(t.rows)
}

fn correlation_from_rows(mut rows: Vec<Vec<f64>>) -> Result<SignedGraph> {
    let n = rows.len();
    for (i, row) in rows.iter_mut().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidGraph(format!(
                "correlation matrix is not square ({n} rows, row {i} has {} columns)",
                row.len()
            )));
        }
        for (j, v) in row.iter_mut().enumerate() {
            if v.abs() > 1.0 + CORRELATION_SLACK {
                return Err(Error::CorrelationOutOfRange {
                    row: i,
                    col: j,
                    value: *v,
                });
            }
            *v = v.clamp(-1.0, 1.0);
        }
    }
    SignedGraph::from_dense(&rows)
}
