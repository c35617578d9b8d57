//! Divisive correlation clustering by repeated QUBO bipartition.
//!
//! Starting from one cluster holding every node, the engine pops a cluster
//! from a FIFO queue, solves the bipartition QUBO on its induced subgraph and
//! keeps the split only if its cut weight is negative (below `-epsilon`).
//! Such a split raises the intra-cluster agreement by exactly `-cut`. A
//! cluster whose best split has a non-negative cut is final.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Partition, SignedGraph};
use crate::qubo::{build_bipartition_qubo, AutoSolver, QuboSolver, SolverRegistry, SolverResult};
use crate::seed::derive_seed;

#[derive(Debug, Clone)]
pub struct ClusterConfig {
    pub solver: Arc<dyn QuboSolver>,
    /// Base seed; the `s`-th QUBO solve uses `derive_seed(seed, s)`.
    pub seed: u64,
    /// Clusters smaller than this are never split.
    pub min_split_size: usize,
    /// A split is accepted only when `cut < -epsilon`.
    pub epsilon: f64,
    pub record_trace: bool,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            solver: Arc::new(AutoSolver::default()),
            seed: 0,
            min_split_size: 2,
            epsilon: 1e-9,
            record_trace: false,
        }
    }
}

impl ClusterConfig {
    pub fn with_backend(registry: &SolverRegistry, backend: &str) -> Result<Self> {
        Ok(Self {
            solver: registry.get(backend)?,
            ..Self::default()
        })
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn record_trace(mut self, on: bool) -> Self {
        self.record_trace = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon < 0.0 {
            return Err(Error::InvalidClusterConfig(format!(
                "epsilon must be >= 0 (got {})",
                self.epsilon
            )));
        }
        if self.min_split_size < 2 {
            return Err(Error::InvalidClusterConfig(format!(
                "min split size must be >= 2 (got {})",
                self.min_split_size
            )));
        }
        Ok(())
    }
}

/// One bipartition attempt. `nodes` index the clustered graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub nodes: Vec<usize>,
    pub mask: Vec<bool>,
    pub cut: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplitTrace(pub Vec<SplitRecord>);

impl SplitTrace {
    pub fn accepted_splits(&self) -> usize {
        self.0.iter().filter(|r| r.accepted).count()
    }
}

#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub bipartition: Bipartition,
    pub cut: f64,
    pub accepted: bool,
    pub solver: SolverResult,
}

#[derive(Debug, Clone)]
pub struct Clustering {
    pub partition: Partition,
    pub agreement: f64,
    /// Number of QUBO solves performed.
    pub solves: usize,
    /// Empty unless `record_trace` was set.
    pub trace: SplitTrace,
}

/// Solves the bipartition QUBO of `g` once, seeded with `cfg.seed`.
pub fn split_once(g: &SignedGraph, cfg: &ClusterConfig) -> Result<SplitOutcome> {
    split_seeded(g, cfg, cfg.seed)
}

fn split_seeded(g: &SignedGraph, cfg: &ClusterConfig, seed: u64) -> Result<SplitOutcome> {
    if g.n() < 2 {
        return Err(Error::InvalidNodeSet(format!(
            "cannot split a graph with {} node(s)",
            g.n()
        )));
    }
    let q = build_bipartition_qubo(g);
    let solver = cfg.solver.solve(&q, seed)?;
    if solver.assignment.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: solver.assignment.len(),
        });
    }
    let bipartition = solver.bipartition();
    let cut = g.cut_weight(&bipartition)?;
    let accepted = !bipartition.is_trivial() && cut < -cfg.epsilon;
    Ok(SplitOutcome {
        bipartition,
        cut,
        accepted,
        solver,
    })
}

pub fn cluster(g: &SignedGraph, cfg: &ClusterConfig) -> Result<Clustering> {
    cfg.validate()?;
    let n = g.n();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([(0..n).collect::<Vec<_>>()]);
    let mut finals: Vec<Vec<usize>> = Vec::new();
    let mut trace = Vec::new();
    let mut solves = 0usize;

    while let Some(nodes) = queue.pop_front() {
        if nodes.len() < cfg.min_split_size {
            finals.push(nodes);
            continue;
        }
        let sub = g.subgraph(&nodes)?;
        let outcome = split_seeded(&sub, cfg, derive_seed(cfg.seed, solves as u64))?;
        solves += 1;
        log::debug!(
            "split #{solves}: {} nodes, cut {:.6}, accepted {}",
            nodes.len(),
            outcome.cut,
            outcome.accepted
        );
        if cfg.record_trace {
            trace.push(SplitRecord {
                nodes: nodes.clone(),
                mask: outcome.bipartition.mask().to_vec(),
                cut: outcome.cut,
                accepted: outcome.accepted,
            });
        }
        if outcome.accepted {
            let pick = |side: Vec<usize>| side.into_iter().map(|i| nodes[i]).collect::<Vec<_>>();
            queue.push_back(pick(outcome.bipartition.side_a()));
            queue.push_back(pick(outcome.bipartition.side_b()));
        } else {
            finals.push(nodes);
        }
    }

    let partition = Partition::from_clusters(n, &finals)?;
    let agreement = g.intra_agreement(&partition)?;
    Ok(Clustering {
        partition,
        agreement,
        solves,
        trace: SplitTrace(trace),
    })
}

/// Partition interchange format: `{labels, k, agreement, trace?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub labels: Vec<usize>,
    pub k: usize,
    pub agreement: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<SplitTrace>,
}

impl PartitionJson {
    pub fn new(p: &Partition, agreement: f64, trace: Option<SplitTrace>) -> Self {
        Self {
            labels: p.labels().to_vec(),
            k: p.k(),
            agreement,
            trace,
        }
    }

    pub fn partition(&self) -> Result<Partition> {
        let p = Partition::new(self.labels.clone());
        if p.k() != self.k {
            return Err(Error::InvalidPartition(format!(
                "declared k = {} but labels contain {} clusters",
                self.k,
                p.k()
            )));
        }
        Ok(p)
    }
}

impl From<&Clustering> for PartitionJson {
    fn from(c: &Clustering) -> Self {
        let trace = (!c.trace.0.is_empty()).then(|| c.trace.clone());
        Self::new(&c.partition, c.agreement, trace)
    }
}
