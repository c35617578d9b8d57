//! Clustering quality: NMI against a reference, signed modularity, and
//! cluster-size balance (Gini index, largest/smallest ratio).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Partition, SignedGraph};

/// How mutual information is normalized by the two label entropies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NmiNormalization {
    /// `sqrt(H(a)·H(b))`
    #[default]
    Sqrt,
    Min,
    Max,
    /// `(H(a) + H(b)) / 2`
    Arithmetic,
}

fn entropy(counts: impl Iterator<Item = usize>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information with the default `sqrt` normalization.
pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    nmi_with(a, b, NmiNormalization::Sqrt)
}

/// NMI in natural-log units. Two single-cluster partitions score 1; if only
/// one of them is a single cluster the score is 0.
pub fn nmi_with(a: &Partition, b: &Partition, norm: NmiNormalization) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    let n = a.len() as f64;
    // Ordered so the floating-point sum is the same on every run.
    let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&la, &lb) in a.labels().iter().zip(b.labels()) {
        *joint.entry((la, lb)).or_default() += 1;
    }
    let sa = a.sizes();
    let sb = b.sizes();
    let ha = entropy(sa.iter().copied(), n);
    let hb = entropy(sb.iter().copied(), n);
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    if ha == 0.0 || hb == 0.0 {
        return Ok(0.0);
    }
    // Labels are canonical, so equal labels mean the same partition; the
    // floating-point ratio below can land one ulp short of 1.
    if a.labels() == b.labels() {
        return Ok(1.0);
    }
    let mut mi = 0.0;
    for (&(i, j), &c) in &joint {
        let c = c as f64;
        mi += c / n * (c * n / (sa[i] as f64 * sb[j] as f64)).ln();
    }
    let denom = match norm {
        NmiNormalization::Sqrt => (ha * hb).sqrt(),
        NmiNormalization::Min => ha.min(hb),
        NmiNormalization::Max => ha.max(hb),
        NmiNormalization::Arithmetic => (ha + hb) / 2.0,
    };
    Ok((mi / denom).clamp(0.0, 1.0))
}

/// Newman modularity extended to signed weights.
///
/// The positive and negative parts of the graph each get the usual
/// `Σ_c (e_cc - a_c²)` score, normalized by their own total weight; the result
/// is `(W⁺·Q⁺ - W⁻·Q⁻) / (W⁺ + W⁻)`. On a non-negative graph this is plain
/// Newman modularity.
pub fn modularity(g: &SignedGraph, p: &Partition) -> Result<f64> {
    if p.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: p.len(),
        });
    }
    let labels = p.labels();
    let k = p.k();
    // Per-cluster intra weight and incident strength, for each sign.
    let mut intra = [vec![0.0; k], vec![0.0; k]];
    let mut strength = [vec![0.0; k], vec![0.0; k]];
    let mut total = [0.0_f64; 2];
    for (i, j, w) in g.edges() {
        let s = usize::from(w < 0.0);
        let w = w.abs();
        total[s] += w;
        if labels[i] == labels[j] {
            intra[s][labels[i]] += w;
            strength[s][labels[i]] += 2.0 * w;
        } else {
            strength[s][labels[i]] += w;
            strength[s][labels[j]] += w;
        }
    }
    if total[0] + total[1] == 0.0 {
        return Err(Error::MetricUndefined(
            "modularity of a graph without edges".into(),
        ));
    }
    let part = |s: usize| -> f64 {
        if total[s] == 0.0 {
            return 0.0;
        }
        (0..k)
            .map(|c| {
                let e = intra[s][c] / total[s];
                let a = strength[s][c] / (2.0 * total[s]);
                e - a * a
            })
            .sum()
    };
    Ok((total[0] * part(0) - total[1] * part(1)) / (total[0] + total[1]))
}

/// Gini index of cluster sizes: `Σ_i Σ_j |s_i - s_j| / (2 n² μ)`.
pub fn gini(sizes: &[usize]) -> Result<f64> {
    check_sizes(sizes)?;
    let n = sizes.len() as f64;
    let mean = sizes.iter().sum::<usize>() as f64 / n;
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    // Σ_i Σ_j |s_i - s_j| = 2 Σ_i (2i - n + 1) s_(i) over ascending order.
    let pair_sum: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, &s)| (2.0 * i as f64 - n + 1.0) * s as f64)
        .sum::<f64>()
        * 2.0;
    Ok(pair_sum / (2.0 * n * n * mean))
}

/// Largest cluster size divided by the smallest.
pub fn size_ratio(sizes: &[usize]) -> Result<f64> {
    check_sizes(sizes)?;
    let max = *sizes.iter().max().unwrap();
    let min = *sizes.iter().min().unwrap();
    Ok(max as f64 / min as f64)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidPartition("no cluster sizes".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidPartition("cluster size must be positive".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmi: Option<f64>,
    pub modularity: f64,
    pub gini: f64,
    pub size_ratio: f64,
    pub agreement: f64,
    pub k: usize,
}

/// All metrics for `p` on `g`; NMI only when a reference partition is given.
pub fn report(g: &SignedGraph, p: &Partition, truth: Option<&Partition>) -> Result<MetricReport> {
    let sizes = p.sizes();
    Ok(MetricReport {
        nmi: truth.map(|t| nmi(p, t)).transpose()?,
        modularity: modularity(g, p)?,
        gini: gini(&sizes)?,
        size_ratio: size_ratio(&sizes)?,
        agreement: g.intra_agreement(p)?,
        k: p.k(),
    })
}
