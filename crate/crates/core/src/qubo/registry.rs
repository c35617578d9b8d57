use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use super::{ExactSolver, QuboProblem, SimulatedAnnealing, SolverResult};
use crate::error::{Error, Result};

/// A QUBO minimizer. Implementations must be deterministic given `seed`.
pub trait QuboSolver: Send + Sync + Debug {
    fn name(&self) -> &str;
    fn solve(&self, q: &QuboProblem, seed: u64) -> Result<SolverResult>;
}

/// Exact enumeration up to the cap, annealing above it.
#[derive(Debug, Clone, Copy, Default)]
pub struct AutoSolver {
    pub exact: ExactSolver,
    pub sa: SimulatedAnnealing,
}

impl QuboSolver for AutoSolver {
    fn name(&self) -> &str {
        "auto"
    }

    fn solve(&self, q: &QuboProblem, seed: u64) -> Result<SolverResult> {
        if q.n() <= self.exact.cap {
            self.exact.solve(q, seed)
        } else {
            self.sa.solve(q, seed)
        }
    }
}

/// Named solver backends. Starts with `auto`, `exact` and `sa`; further
/// backends (such as a remote annealer client) can be registered by name.
#[derive(Debug, Clone)]
pub struct SolverRegistry {
    backends: BTreeMap<String, Arc<dyn QuboSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        Self::with_backends(ExactSolver::default(), SimulatedAnnealing::default())
    }
}

impl SolverRegistry {
    pub fn empty() -> Self {
        Self {
            backends: BTreeMap::new(),
        }
    }

    /// Default registry built around the given exact and annealing settings.
    pub fn with_backends(exact: ExactSolver, sa: SimulatedAnnealing) -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(AutoSolver { exact, sa }));
        r.register(Arc::new(exact));
        r.register(Arc::new(sa));
        r
    }

    /// Registers under the solver's own name, replacing any previous entry.
    pub fn register(&mut self, solver: Arc<dyn QuboSolver>) {
        self.backends.insert(solver.name().to_owned(), solver);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn QuboSolver>> {
        self.backends
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownBackend(name.to_owned()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.backends.keys().map(String::as_str)
    }
}

/// Solves `q` with the backend registered as `backend`.
pub fn solve(
    q: &QuboProblem,
    registry: &SolverRegistry,
    backend: &str,
    seed: u64,
) -> Result<SolverResult> {
    registry.get(backend)?.solve(q, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;
    use crate::qubo::build_bipartition_qubo;

    #[derive(Debug)]
    struct AllZeros;

    impl QuboSolver for AllZeros {
        fn name(&self) -> &str {
            "zeros"
        }

        fn solve(&self, q: &QuboProblem, _seed: u64) -> Result<SolverResult> {
            Ok(SolverResult {
                assignment: vec![false; q.n()],
                objective: 0.0,
                evaluations: 1,
                seed: None,
                backend: "zeros".into(),
            })
        }
    }

    #[test]
    fn auto_dispatches_on_size() {
        let g = SignedGraph::from_dense(&[[0.0, -1.0], [-1.0, 0.0]]).unwrap();
        let q = build_bipartition_qubo(&g);
        let reg = SolverRegistry::default();
        assert_eq!(solve(&q, &reg, "auto", 0).unwrap().backend, "exact");

        let small_cap = AutoSolver {
            exact: ExactSolver { cap: 1 },
            sa: SimulatedAnnealing::default(),
        };
        assert_eq!(small_cap.solve(&q, 0).unwrap().backend, "sa");
    }

    #[test]
    fn unknown_backend() {
        let q = QuboProblem::new(1);
        let err = solve(&q, &SolverRegistry::default(), "dwave", 0).unwrap_err();
        assert!(matches!(err, Error::UnknownBackend(ref n) if n == "dwave"));
    }

    #[test]
    fn custom_backend_registration() {
        let mut reg = SolverRegistry::default();
        reg.register(Arc::new(AllZeros));
        assert_eq!(reg.names().collect::<Vec<_>>(), ["auto", "exact", "sa", "zeros"]);
        let q = QuboProblem::new(3);
        assert_eq!(solve(&q, &reg, "zeros", 0).unwrap().assignment, vec![false; 3]);
    }
}
