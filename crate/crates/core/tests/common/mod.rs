//! Independent reference implementations used as test oracles. Each one is
//! written from the textbook definition, without touching library internals.

#![allow(dead_code)]

use corrclust::graph::{Partition, SignedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense symmetric matrix with zero diagonal, weights uniform in `[-1, 1]`.
pub fn random_weights(n: usize, r: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = r.random_range(-1.0..=1.0);
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    w
}

/// Uniform in `[-1, 1]` but on the grid `m / 2^40`. Sums of a few hundred such
/// values are exact in f64, so two summation orders agree bit for bit.
pub fn dyadic_weights(n: usize, r: &mut impl Rng) -> Vec<Vec<f64>> {
    const SCALE: f64 = (1u64 << 40) as f64;
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let m: i64 = r.random_range(-(1i64 << 40)..=(1i64 << 40));
            let v = m as f64 / SCALE;
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    w
}

pub fn graph(w: &[Vec<f64>]) -> SignedGraph {
    SignedGraph::from_dense(w).unwrap()
}

/// Bits of `code` as a mask of length `n`.
pub fn mask(code: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

/// Total weight of edges with endpoints on different sides.
pub fn naive_cut(w: &[Vec<f64>], x: &[bool]) -> f64 {
    let mut s = 0.0;
    for i in 0..w.len() {
        for j in (i + 1)..w.len() {
            if x[i] != x[j] {
                s += w[i][j];
            }
        }
    }
    s
}

/// Minimum of `f` over all `2^n` assignments.
pub fn brute_min(n: usize, f: impl Fn(&[bool]) -> f64) -> f64 {
    (0..1u64 << n)
        .map(|c| f(&mask(c, n)))
        .fold(f64::INFINITY, f64::min)
}

/// Total weight of edges inside clusters.
pub fn naive_agreement(w: &[Vec<f64>], labels: &[usize]) -> f64 {
    let mut s = 0.0;
    for i in 0..w.len() {
        for j in (i + 1)..w.len() {
            if labels[i] == labels[j] {
                s += w[i][j];
            }
        }
    }
    s
}

/// Calls `f` on every set partition of `0..n` as a restricted growth string
/// (Bell(n) of them).
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=limit {
            labels.push(l);
            rec(labels, n, max.max(l), f);
            labels.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, 0, &mut f);
}

/// Best max-agreement value over every set partition.
pub fn best_agreement(w: &[Vec<f64>]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for_each_set_partition(w.len(), |l| best = best.max(naive_agreement(w, l)));
    best
}

/// Pearson r from the textbook covariance formula, column by column.
pub fn naive_pearson(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = rows.len() as f64;
    let f = rows[0].len();
    let col = |j: usize| rows.iter().map(|r| r[j]).collect::<Vec<_>>();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / m;
    let cov = |a: &[f64], b: &[f64]| {
        let (ma, mb) = (mean(a), mean(b));
        a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (m - 1.0)
    };
    let mut out = vec![vec![0.0; f]; f];
    for a in 0..f {
        for b in 0..f {
            if a != b {
                let (ca, cb) = (col(a), col(b));
                out[a][b] = cov(&ca, &cb) / (cov(&ca, &ca).sqrt() * cov(&cb, &cb).sqrt());
            }
        }
    }
    out
}

/// NMI with sqrt normalization from the contingency table.
pub fn naive_nmi(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let kb = b.iter().max().map_or(0, |m| m + 1);
    let mut joint = vec![vec![0.0; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        joint[x][y] += 1.0;
    }
    let pa: Vec<f64> = joint.iter().map(|r| r.iter().sum::<f64>() / n).collect();
    let pb: Vec<f64> = (0..kb).map(|c| joint.iter().map(|r| r[c]).sum::<f64>() / n).collect();
    let h = |p: &[f64]| -p.iter().filter(|&&v| v > 0.0).map(|v| v * v.ln()).sum::<f64>();
    let mut mi = 0.0;
    for i in 0..ka {
        for j in 0..kb {
            let p = joint[i][j] / n;
            if p > 0.0 {
                mi += p * (p / (pa[i] * pb[j])).ln();
            }
        }
    }
    let (ha, hb) = (h(&pa), h(&pb));
    match (ha == 0.0, hb == 0.0) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => mi / (ha * hb).sqrt(),
    }
}

pub fn partition(labels: &[usize]) -> Partition {
    Partition::new(labels.to_vec())
}
