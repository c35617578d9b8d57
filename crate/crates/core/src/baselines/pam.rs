use rand::seq::SliceRandom;

use super::{check_k, DissimilarityMatrix};
use crate::error::Result;
use crate::graph::Partition;
use crate::seed::rng;

/// Partitioning Around Medoids (BUILD + SWAP).
pub fn pam(d: &DissimilarityMatrix, k: usize, seed: u64) -> Result<Partition> {
    let (medoids, _) = pam_medoids(d, k, seed)?;
    Ok(assign(d, &medoids))
}

/// Medoids and total dissimilarity of every point to its nearest medoid.
///
/// BUILD adds medoids greedily, each time picking the candidate that lowers
/// the total cost most; candidates are scanned in a seeded order, so the seed
/// only decides between exactly tied candidates. SWAP then scans
/// `(medoid slot, non-medoid)` pairs in index order and applies the first swap
/// that lowers the cost, restarting the scan until none does.
pub fn pam_medoids(d: &DissimilarityMatrix, k: usize, seed: u64) -> Result<(Vec<usize>, f64)> {
    let n = d.n();
    check_k(k, n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng(seed));

    let mut medoids: Vec<usize> = Vec::with_capacity(k);
    let mut nearest = vec![f64::INFINITY; n];
    while medoids.len() < k {
        let mut best = (usize::MAX, f64::INFINITY);
        for &c in &order {
            if medoids.contains(&c) {
                continue;
            }
            let cost: f64 = (0..n).map(|o| nearest[o].min(d.get(o, c))).sum();
            if cost < best.1 {
                best = (c, cost);
            }
        }
        medoids.push(best.0);
        for (o, v) in nearest.iter_mut().enumerate() {
            *v = v.min(d.get(o, best.0));
        }
    }

    let mut cost = total_cost(d, &medoids);
    'scan: loop {
        for m in 0..k {
            for c in 0..n {
                if medoids.contains(&c) {
                    continue;
                }
                let old = medoids[m];
                medoids[m] = c;
                let candidate = total_cost(d, &medoids);
                if candidate < cost - 1e-12 * (1.0 + cost.abs()) {
                    cost = candidate;
                    continue 'scan;
                }
                medoids[m] = old;
            }
        }
        break;
    }
    Ok((medoids, cost))
}

fn total_cost(d: &DissimilarityMatrix, medoids: &[usize]) -> f64 {
    (0..d.n())
        .map(|o| {
            medoids
                .iter()
                .map(|&m| d.get(o, m))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// Nearest-medoid labels; every medoid keeps its own cluster so all `k`
/// clusters are non-empty. Ties go to the earlier medoid.
fn assign(d: &DissimilarityMatrix, medoids: &[usize]) -> Partition {
    let labels = (0..d.n())
        .map(|o| {
            if let Some(m) = medoids.iter().position(|&m| m == o) {
                return m;
            }
            let mut best = (0, f64::INFINITY);
            for (m, &med) in medoids.iter().enumerate() {
                if d.get(o, med) < best.1 {
                    best = (m, d.get(o, med));
                }
            }
            best.0
        })
        .collect();
    Partition::new(labels)
}
