//! Quadratic unconstrained binary optimization.
//!
//! Every bipartition step of the divisive engine is posed as a QUBO whose
//! objective, for a mask `x`, equals the cut weight of the split. The solvers
//! here minimize it; the exact enumerator doubles as the test oracle for the
//! annealer.

mod anneal;
mod exact;
mod registry;

pub use anneal::{solve_sa, SaConfig, SimulatedAnnealing};
pub use exact::{solve_exact, ExactSolver, DEFAULT_EXACT_CAP};
pub use registry::{solve, AutoSolver, QuboSolver, SolverRegistry};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, SignedGraph};

/// Minimize `Σ_i linear[i]·x_i + Σ_{i<j} q_ij·x_i·x_j` over `x ∈ {0,1}^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    n: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl QuboProblem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            linear: vec![0.0; n],
            quadratic: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn add_linear(&mut self, i: usize, v: f64) -> Result<()> {
        self.check_index(i)?;
        check_finite(v)?;
        self.linear[i] += v;
        Ok(())
    }

    /// Adds `v·x_i·x_j`. Keys are stored with `i < j`; a diagonal term folds
    /// into the linear coefficient since `x_i² = x_i`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        check_finite(v)?;
        if i == j {
            self.linear[i] += v;
        } else {
            *self.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::InvalidSolverConfig(format!(
                "variable {i} out of range for {} variables",
                self.n
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[bool]) -> f64 {
        let mut total = 0.0;
        for (i, &q) in self.linear.iter().enumerate() {
            if x[i] {
                total += q;
            }
        }
        for (&(i, j), &q) in &self.quadratic {
            if x[i] && x[j] {
                total += q;
            }
        }
        total
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Symmetric adjacency lists of the quadratic couplings.
    pub(crate) fn neighbors(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(i, j), &q) in &self.quadratic {
            if q != 0.0 {
                adj[i].push((j, q));
                adj[j].push((i, q));
            }
        }
        adj
    }

    /// Whether `E(x) = E(1 - x)` for every assignment, which holds exactly
    /// when `q_i = -½ Σ_j q_ij` for every variable. Bipartition QUBOs have
    /// this property, letting a solver pin one variable.
    pub fn is_complement_symmetric(&self) -> bool {
        let mut half_sums = vec![0.0; self.n];
        let mut scale = vec![0.0_f64; self.n];
        for (&(i, j), &q) in &self.quadratic {
            half_sums[i] += q / 2.0;
            half_sums[j] += q / 2.0;
            scale[i] += q.abs();
            scale[j] += q.abs();
        }
        (0..self.n).all(|i| {
            let tol = 1e-12 * (1.0 + scale[i] + self.linear[i].abs());
            (self.linear[i] + half_sums[i]).abs() <= tol
        })
    }

    pub fn to_json(&self) -> QuboJson {
        QuboJson {
            n: self.n,
            linear: self.linear.clone(),
            quadratic: self
                .quadratic
                .iter()
                .map(|(&(i, j), &v)| (i, j, v))
                .collect(),
        }
    }

    pub fn from_json(json: &QuboJson) -> Result<Self> {
        if json.linear.len() != json.n {
            return Err(Error::DimensionMismatch {
                expected: json.n,
                got: json.linear.len(),
            });
        }
        let mut q = Self::new(json.n);
        for (i, &v) in json.linear.iter().enumerate() {
            q.add_linear(i, v)?;
        }
        for &(i, j, v) in &json.quadratic {
            q.add_quadratic(i, j, v)?;
        }
        Ok(q)
    }
}

fn check_finite(v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidSolverConfig(format!(
            "non-finite coefficient {v}"
        )));
    }
    Ok(())
}

/// Interchange format for external solvers:
/// `{"n": .., "linear": [..], "quadratic": [[i, j, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboJson {
    pub n: usize,
    pub linear: Vec<f64>,
    pub quadratic: Vec<(usize, usize, f64)>,
}

/// QUBO whose value at mask `x` is the cut weight of the split `x`.
///
/// Expanding the agreement indicator `1 - (x_i + x_j - 2 x_i x_j)` and dropping
/// the constant gives linear terms `Σ_{j≠i} w_ij` and couplings `-2 w_ij`.
pub fn build_bipartition_qubo(g: &SignedGraph) -> QuboProblem {
    let n = g.n();
    let mut q = QuboProblem::new(n);
    for i in 0..n {
        q.linear[i] = g.row(i).iter().sum();
    }
    for (i, j, w) in g.edges() {
        q.quadratic.insert((i, j), -2.0 * w);
    }
    q
}

/// Best assignment found by a solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub assignment: Vec<bool>,
    /// Minimized objective, always equal to `evaluate(problem, assignment)`.
    pub objective: f64,
    /// Objective evaluations (exact) or sweeps (annealing).
    pub evaluations: u64,
    pub seed: Option<u64>,
    pub backend: String,
}

impl SolverResult {
    pub fn bipartition(&self) -> Bipartition {
        Bipartition::new(self.assignment.clone())
    }
}
