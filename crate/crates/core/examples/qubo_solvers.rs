// The bipartition QUBO, solved exactly and by simulated annealing, exported
// to JSON, and handed to a user-defined backend through the registry.
//
//     cargo run --example qubo_solvers

use std::sync::Arc;

use corrclust::gcsq::{cluster, ClusterConfig};
use corrclust::qubo::{
    build_bipartition_qubo, solve, QuboProblem, QuboSolver, SolverRegistry, SolverResult,
};
use corrclust::synthgen::{generate, GenSpec, SizeProfile};

/// Single-flip descent from the all-zero assignment. Deterministic and fast,
/// but only locally optimal.
#[derive(Debug)]
struct GreedyDescent;

impl QuboSolver for GreedyDescent {
    fn name(&self) -> &str {
        "greedy"
    }

    fn solve(&self, q: &QuboProblem, _seed: u64) -> corrclust::Result<SolverResult> {
        let mut x = vec![false; q.n()];
        let mut best = q.evaluate(&x)?;
        let mut evaluations = 1;
        loop {
            let mut improved = false;
            for i in 0..q.n() {
                x[i] = !x[i];
                let e = q.evaluate(&x)?;
                evaluations += 1;
                if e < best {
                    best = e;
                    improved = true;
                } else {
                    x[i] = !x[i];
                }
            }
            if !improved {
                break;
            }
        }
        Ok(SolverResult {
            assignment: x,
            objective: best,
            evaluations,
            seed: None,
            backend: self.name().into(),
        })
    }
}

pub fn run_example() -> corrclust::Result<()> {
    let (g, _) = generate(&GenSpec::new(18, 3, SizeProfile::Uniform, 7))?;
    let q = build_bipartition_qubo(&g);
    println!("{} variables, {} couplings", q.n(), q.quadratic().len());

    let mut registry = SolverRegistry::default();
    registry.register(Arc::new(GreedyDescent));
    for backend in ["exact", "sa", "greedy"] {
        let r = solve(&q, &registry, backend, 1)?;
        println!(
            "{backend:>6}: cut {:>8.4} after {:>7} evaluations",
            r.objective, r.evaluations
        );
    }

    let json = serde_json::to_string(&q.to_json())?;
    println!("QUBO JSON: {} bytes", json.len());
    let back = QuboProblem::from_json(&serde_json::from_str(&json)?)?;
    assert_eq!(back, q);

    let cfg = ClusterConfig::with_backend(&registry, "greedy")?;
    let c = cluster(&g, &cfg)?;
    println!("greedy-backed clustering: k = {}", c.partition.k());
    Ok(())
}

fn main() -> corrclust::Result<()> {
    run_example()
}
