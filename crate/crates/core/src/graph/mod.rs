//! Signed weighted graphs and the agreement/cut arithmetic built on them.
//!
//! A [`SignedGraph`] stores a dense symmetric weight matrix with a zero
//! diagonal. Positive weights express agreement between two nodes, negative
//! weights disagreement. Subgraphs remember which nodes of the root graph
//! they were cut from through `node_ids`.

pub mod csv;
mod partition;

pub use partition::{Bipartition, Partition};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    n: usize,
    weights: Vec<f64>,
    node_ids: Vec<usize>,
}

impl SignedGraph {
    /// Builds a graph from a dense square matrix.
    ///
    /// Asymmetric input is symmetrized by averaging `w_ij` and `w_ji`, and the
    /// diagonal is zeroed. Node ids are `0..n`.
    pub fn from_dense<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGraph("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "matrix is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidGraph(format!(
                    "non-finite entry at ({i}, {j})"
                )));
            }
        }
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let a = rows[i].as_ref()[j];
                let b = rows[j].as_ref()[i];
                let w = if a == b { a } else { (a + b) / 2.0 };
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        Ok(Self {
            n,
            weights,
            node_ids: (0..n).collect(),
        })
    }

    /// Builds a graph from a row-major `n * n` buffer, with the same
    /// symmetrization rules as [`SignedGraph::from_dense`].
    pub fn from_row_major(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        let rows: Vec<&[f64]> = data.chunks(n.max(1)).collect();
        Self::from_dense(&rows)
    }

    /// Sparse constructor. Each `(i, j, w)` sets the undirected edge `{i, j}`;
    /// repeated edges accumulate and self-loops are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("empty graph".into()));
        }
        let mut weights = vec![0.0; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if !w.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "non-finite weight on edge ({i}, {j})"
                )));
            }
            if i == j {
                continue;
            }
            weights[i * n + j] += w;
            weights[j * n + i] += w;
        }
        Ok(Self {
            n,
            weights,
            node_ids: (0..n).collect(),
        })
    }

    /// Replaces the node identifiers, e.g. to keep track of dropped features.
    pub fn with_node_ids(mut self, node_ids: Vec<usize>) -> Result<Self> {
        if node_ids.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: node_ids.len(),
            });
        }
        let mut seen = node_ids.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate node ids".into()));
        }
        self.node_ids = node_ids;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    pub fn node_ids(&self) -> &[usize] {
        &self.node_ids
    }

    /// Iterates `(i, j, w_ij)` over unordered pairs `i < j` with nonzero weight.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n).filter_map(move |j| {
                let w = self.weight(i, j);
                (w != 0.0).then_some((i, j, w))
            })
        })
    }

    /// Largest absolute edge weight.
    pub fn max_abs_weight(&self) -> f64 {
        self.weights.iter().fold(0.0_f64, |m, w| m.max(w.abs()))
    }

    /// Induced subgraph on `nodes` (indices into `self`). The result's node ids
    /// are the corresponding ids of `self`, so they always refer back to the
    /// root graph.
    pub fn subgraph(&self, nodes: &[usize]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidNodeSet("empty node set".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in nodes {
            if v >= self.n {
                return Err(Error::InvalidNodeSet(format!(
                    "index {v} out of range for {} nodes",
                    self.n
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidNodeSet(format!("index {v} repeated")));
            }
        }
        let m = nodes.len();
        let mut weights = vec![0.0; m * m];
        for (a, &i) in nodes.iter().enumerate() {
            let row = self.row(i);
            for (b, &j) in nodes.iter().enumerate() {
                weights[a * m + b] = row[j];
            }
        }
        Ok(Self {
            n: m,
            weights,
            node_ids: nodes.iter().map(|&v| self.node_ids[v]).collect(),
        })
    }

    /// Total weight of edges crossing the bipartition: `Σ_{i∈A, j∈B} w_ij`.
    /// Zero when either side is empty.
    pub fn cut_weight(&self, b: &Bipartition) -> Result<f64> {
        let mask = b.mask();
        if mask.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: mask.len(),
            });
        }
        let mut cut = 0.0;
        for i in 0..self.n {
            if !mask[i] {
                continue;
            }
            let row = self.row(i);
            for j in 0..self.n {
                if !mask[j] {
                    cut += row[j];
                }
            }
        }
        Ok(cut)
    }

    /// Max-agreement objective: sum of `w_ij` over same-cluster pairs `i < j`.
    pub fn intra_agreement(&self, p: &Partition) -> Result<f64> {
        let labels = p.labels();
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        let mut total = 0.0;
        for i in 0..self.n {
            let row = self.row(i);
            for j in (i + 1)..self.n {
                if labels[i] == labels[j] {
                    total += row[j];
                }
            }
        }
        Ok(total)
    }
}
