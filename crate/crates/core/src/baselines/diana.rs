use super::{check_k, DissimilarityMatrix};
use crate::error::Result;
use crate::graph::Partition;

/// Divisive analysis (DIANA).
///
/// Repeatedly splits the cluster with the largest diameter: the member with
/// the highest mean dissimilarity seeds a splinter group, then members whose
/// mean dissimilarity to the rest exceeds that to the splinter group migrate
/// one at a time (largest difference first). Ties go to the lowest index.
pub fn diana(d: &DissimilarityMatrix, k: usize) -> Result<Partition> {
    let n = d.n();
    check_k(k, n)?;
    let mut clusters: Vec<Vec<usize>> = vec![(0..n).collect()];
    while clusters.len() < k {
        let target = widest_cluster(d, &clusters);
        let members = std::mem::take(&mut clusters[target]);
        let (rest, splinter) = splinter(d, members);
        clusters[target] = rest;
        clusters.push(splinter);
    }
    Partition::from_clusters(n, &clusters)
}

fn diameter(d: &DissimilarityMatrix, members: &[usize]) -> f64 {
    let mut m = 0.0_f64;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            m = m.max(d.get(i, j));
        }
    }
    m
}

/// Index of the splittable cluster with the largest diameter. Among equal
/// diameters the cluster holding the smallest node wins.
fn widest_cluster(d: &DissimilarityMatrix, clusters: &[Vec<usize>]) -> usize {
    let mut best: Option<(usize, f64, usize)> = None;
    for (c, members) in clusters.iter().enumerate() {
        if members.len() < 2 {
            continue;
        }
        let diam = diameter(d, members);
        let first = members[0];
        let better = match best {
            None => true,
            Some((_, bd, bf)) => diam > bd || (diam == bd && first < bf),
        };
        if better {
            best = Some((c, diam, first));
        }
    }
    best.expect("k <= n guarantees a splittable cluster").0
}

fn mean_to(d: &DissimilarityMatrix, i: usize, group: &[usize]) -> f64 {
    let others = group.iter().filter(|&&j| j != i);
    let count = others.clone().count();
    if count == 0 {
        return 0.0;
    }
    others.map(|&j| d.get(i, j)).sum::<f64>() / count as f64
}

/// Splits `members` (ascending) into `(remaining, splinter)`, both non-empty.
fn splinter(d: &DissimilarityMatrix, members: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut rest = members;
    let seed_pos = argmax(rest.iter().map(|&i| mean_to(d, i, &rest)));
    let mut group = vec![rest.remove(seed_pos)];

    while rest.len() > 1 {
        let diffs: Vec<f64> = rest
            .iter()
            .map(|&i| mean_to(d, i, &rest) - mean_to(d, i, &group))
            .collect();
        let pos = argmax(diffs.iter().copied());
        if diffs[pos] <= 0.0 {
            break;
        }
        group.push(rest.remove(pos));
    }
    group.sort_unstable();
    (rest, group)
}

/// First index of the maximum.
fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}
