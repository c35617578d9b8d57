//! Correlation clustering for signed weighted graphs.
//!
//! The core method is divisive: the whole node set is split in two by
//! solving a QUBO whose optimum is the most negative cut, and each half is
//! split again until no split raises the intra-cluster agreement. Any QUBO
//! backend can be plugged in through [`qubo::QuboSolver`]; exact enumeration
//! and simulated annealing ship with the crate.
//!
//! Around the engine sit classical baselines ([`baselines`]), evaluation
//! metrics ([`metrics`]), a planted-partition generator ([`synthgen`]),
//! Pearson-correlation ingestion ([`ingest`]) and a seeded experiment runner
//! ([`experiment`]) used by the `corrclust` binary.
//!
//! ```
//! use corrclust::gcsq::{cluster, ClusterConfig};
//! use corrclust::graph::SignedGraph;
//!
//! let g = SignedGraph::from_dense(&[
//!     [0.0, 1.0, -1.0],
//!     [1.0, 0.0, -1.0],
//!     [-1.0, -1.0, 0.0],
//! ])?;
//! let result = cluster(&g, &ClusterConfig::default())?;
//! assert_eq!(result.partition.labels(), &[0, 0, 1]);
//! assert_eq!(result.agreement, 1.0);
//! # Ok::<(), corrclust::Error>(())
//! ```

pub mod baselines;
pub mod cli;
mod error;
pub mod experiment;
pub mod gcsq;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod qubo;
pub mod seed;
pub mod synthgen;

pub use error::{Error, Result};

/// Crate version echoed into experiment reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
