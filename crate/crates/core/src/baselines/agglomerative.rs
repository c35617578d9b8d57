use super::{check_k, DissimilarityMatrix};
use crate::error::Result;
use crate::graph::Partition;

/// Average-linkage agglomerative clustering cut at `k` clusters.
///
/// Merges the closest pair of active clusters until `k` remain, updating
/// distances with the Lance-Williams rule
/// `d(a∪b, c) = (|a|·d(a, c) + |b|·d(b, c)) / (|a| + |b|)`.
/// The merged cluster keeps the smaller slot; ties go to the smallest `(i, j)`.
pub fn agglomerative(d: &DissimilarityMatrix, k: usize) -> Result<Partition> {
    let n = d.n();
    check_k(k, n)?;
    let mut dist: Vec<f64> = (0..n).flat_map(|i| d.row(i).to_vec()).collect();
    let mut size = vec![1usize; n];
    let mut active = vec![true; n];
    let mut slot: Vec<usize> = (0..n).collect();

    for _ in 0..(n - k) {
        let mut best = (usize::MAX, usize::MAX, f64::INFINITY);
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in (i + 1)..n {
                if active[j] && dist[i * n + j] < best.2 {
                    best = (i, j, dist[i * n + j]);
                }
            }
        }
        let (a, b, _) = best;
        let (sa, sb) = (size[a] as f64, size[b] as f64);
        for c in 0..n {
            if active[c] && c != a && c != b {
                let v = (sa * dist[a * n + c] + sb * dist[b * n + c]) / (sa + sb);
                dist[a * n + c] = v;
                dist[c * n + a] = v;
            }
        }
        size[a] += size[b];
        active[b] = false;
        for s in slot.iter_mut() {
            if *s == b {
                *s = a;
            }
        }
    }
    Ok(Partition::new(slot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::tests::two_blocks;

    #[test]
    fn trivial_k() {
        let d = two_blocks();
        assert_eq!(agglomerative(&d, 6).unwrap(), Partition::singletons(6));
        assert_eq!(agglomerative(&d, 1).unwrap().k(), 1);
        assert!(agglomerative(&d, 0).is_err());

        let two = DissimilarityMatrix::from_row_major(2, vec![0.0, 0.4, 0.4, 0.0]).unwrap();
        assert_eq!(agglomerative(&two, 1).unwrap(), Partition::single_cluster(2));
    }

    #[test]
    fn two_blocks_split() {
        assert_eq!(
            agglomerative(&two_blocks(), 2).unwrap(),
            Partition::new(vec![0, 0, 0, 1, 1, 1])
        );
    }

    #[test]
    fn average_linkage_update() {
        // 0 and 1 merge first (0.1); then d({0,1}, 2) = (0.5 + 0.9) / 2 = 0.7
        // exceeds d(2, 3) = 0.6, so {2, 3} merges next.
        let d = DissimilarityMatrix::from_row_major(
            4,
            vec![
                0.0, 0.1, 0.5, 1.0, //
                0.1, 0.0, 0.9, 1.0, //
                0.5, 0.9, 0.0, 0.6, //
                1.0, 1.0, 0.6, 0.0,
            ],
        )
        .unwrap();
        assert_eq!(agglomerative(&d, 2).unwrap(), Partition::new(vec![0, 0, 1, 1]));
    }
}
