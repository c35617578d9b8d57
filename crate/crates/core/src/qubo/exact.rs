use super::{QuboProblem, QuboSolver, SolverResult};
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_CAP: usize = 24;

/// Exhaustive enumeration in Gray-code order. Each step flips one variable and
/// updates the local fields in `O(degree)`.
#[derive(Debug, Clone, Copy)]
pub struct ExactSolver {
    pub cap: usize,
}

impl Default for ExactSolver {
    fn default() -> Self {
        Self {
            cap: DEFAULT_EXACT_CAP,
        }
    }
}

impl QuboSolver for ExactSolver {
    fn name(&self) -> &str {
        "exact"
    }

    fn solve(&self, q: &QuboProblem, _seed: u64) -> Result<SolverResult> {
        solve_exact(q, self.cap)
    }
}

/// Global minimum of `q`. When the problem is complement symmetric (every
/// bipartition QUBO is) variable 0 is pinned to 0, halving the search.
pub fn solve_exact(q: &QuboProblem, cap: usize) -> Result<SolverResult> {
    let n = q.n();
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    let free: Vec<usize> = if n > 0 && q.is_complement_symmetric() {
        (1..n).collect()
    } else {
        (0..n).collect()
    };
    let adj = q.neighbors();
    let mut x = vec![false; n];
    let mut field: Vec<f64> = q.linear().to_vec();
    let mut energy = 0.0;
    let mut best_energy = 0.0;
    let mut best = x.clone();

    let steps: u64 = 1u64 << free.len();
    for t in 1..steps {
        let v = free[t.trailing_zeros() as usize];
        if x[v] {
            energy -= field[v];
            x[v] = false;
            for &(u, c) in &adj[v] {
                field[u] -= c;
            }
        } else {
            energy += field[v];
            x[v] = true;
            for &(u, c) in &adj[v] {
                field[u] += c;
            }
        }
        if energy < best_energy {
            best_energy = energy;
            best.copy_from_slice(&x);
        }
    }

    let objective = q.evaluate_unchecked(&best);
    Ok(SolverResult {
        assignment: best,
        objective,
        evaluations: steps,
        seed: None,
        backend: "exact".into(),
    })
}
