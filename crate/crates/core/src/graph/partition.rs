use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Assignment of every node to exactly one cluster.
///
/// Labels are canonical: renumbered `0..k` in order of first appearance, so
/// two equal clusterings always compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    labels: Vec<usize>,
    k: usize,
}

impl TryFrom<PartitionRepr> for Partition {
    type Error = Error;

    fn try_from(r: PartitionRepr) -> Result<Self> {
        let p = Partition::new(r.labels);
        if p.k != r.k {
            return Err(Error::InvalidPartition(format!(
                "declared k = {} but labels contain {} clusters",
                r.k, p.k
            )));
        }
        Ok(p)
    }
}

impl From<Partition> for PartitionRepr {
    fn from(p: Partition) -> Self {
        PartitionRepr {
            labels: p.labels,
            k: p.k,
        }
    }
}

impl Partition {
    /// Canonicalizes arbitrary labels.
    pub fn new(labels: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        let k = map.len();
        Self { labels, k }
    }

    /// Builds a partition of `0..n` from explicit member lists. Every node must
    /// appear in exactly one non-empty cluster.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition(format!("cluster {c} is empty")));
            }
            for &v in members {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "node {v} out of range for {n} nodes"
                    )));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "node {v} assigned twice"
                    )));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("node {v} unassigned")));
        }
        Ok(Self::new(labels))
    }

    pub fn single_cluster(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of clusters.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Members of each cluster in label order, each list ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}

/// Two-way split of a node set. Side A is `mask[i] == true`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    mask: Vec<bool>,
}

impl Bipartition {
    pub fn new(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    /// Convenience constructor from 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self {
            mask: bits.iter().map(|&b| b != 0).collect(),
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: self.mask.iter().map(|b| !b).collect(),
        }
    }

    pub fn side_a(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| !self.mask[i]).collect()
    }

    /// True when one of the sides has no nodes.
    pub fn is_trivial(&self) -> bool {
        self.mask.iter().all(|&b| b) || self.mask.iter().all(|&b| !b)
    }
}
