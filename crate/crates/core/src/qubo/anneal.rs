use rand::Rng;
use rayon::prelude::*;

use super::{QuboProblem, QuboSolver, SolverResult};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng};

/// Fully resolved annealing parameters for one solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaConfig {
    pub sweeps: usize,
    pub restarts: usize,
    pub t_initial: f64,
    pub t_final: f64,
    pub seed: u64,
}

impl SaConfig {
    /// Problem-scaled defaults: `T₀` is the largest coefficient magnitude,
    /// `T_f = 10⁻³·T₀`, `100·n` sweeps and 8 restarts.
    pub fn defaults_for(q: &QuboProblem, seed: u64) -> Self {
        SimulatedAnnealing::default().config_for(q, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweeps == 0 || self.restarts == 0 {
            return Err(Error::InvalidSolverConfig(
                "sweeps and restarts must be at least 1".into(),
            ));
        }
        if !(self.t_initial > self.t_final && self.t_final > 0.0) || !self.t_initial.is_finite() {
            return Err(Error::InvalidSolverConfig(format!(
                "temperatures must satisfy T0 > Tf > 0 (got {} and {})",
                self.t_initial, self.t_final
            )));
        }
        Ok(())
    }
}

/// Annealing backend. Unset fields are derived from the problem at solve time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulatedAnnealing {
    pub sweeps: Option<usize>,
    pub sweeps_per_variable: usize,
    pub restarts: usize,
    pub t_initial: Option<f64>,
    pub t_final_ratio: f64,
}

impl Default for SimulatedAnnealing {
    fn default() -> Self {
        Self {
            sweeps: None,
            sweeps_per_variable: 100,
            restarts: 8,
            t_initial: None,
            t_final_ratio: 1e-3,
        }
    }
}

impl SimulatedAnnealing {
    pub fn config_for(&self, q: &QuboProblem, seed: u64) -> SaConfig {
        let scale = q.max_abs_coefficient();
        let t_initial = self
            .t_initial
            .unwrap_or(if scale > 0.0 { scale } else { 1.0 });
        SaConfig {
            sweeps: self
                .sweeps
                .unwrap_or_else(|| self.sweeps_per_variable.saturating_mul(q.n()).max(1)),
            restarts: self.restarts,
            t_initial,
            t_final: t_initial * self.t_final_ratio,
            seed,
        }
    }
}

impl QuboSolver for SimulatedAnnealing {
    fn name(&self) -> &str {
        "sa"
    }

    fn solve(&self, q: &QuboProblem, seed: u64) -> Result<SolverResult> {
        solve_sa(q, &self.config_for(q, seed))
    }
}

/// Single-bit-flip simulated annealing with a geometric temperature schedule.
///
/// Restart `r` draws from its own stream seeded by `(seed, r)`, so restarts
/// run in parallel and the result depends only on the seed. The best restart
/// wins; ties go to the lowest restart index.
pub fn solve_sa(q: &QuboProblem, cfg: &SaConfig) -> Result<SolverResult> {
    cfg.validate()?;
    if q.n() == 0 {
        return Err(Error::InvalidSolverConfig("empty problem".into()));
    }
    let adj = q.neighbors();
    let runs: Vec<(f64, Vec<bool>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let x = anneal_once(q, &adj, cfg, derive_seed(cfg.seed, r as u64));
            (q.evaluate_unchecked(&x), x)
        })
        .collect();

    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.0 < runs[best].0 {
            best = r;
        }
    }
    let (objective, assignment) = runs.into_iter().nth(best).expect("restarts >= 1");
    Ok(SolverResult {
        assignment,
        objective,
        evaluations: (cfg.sweeps * cfg.restarts) as u64,
        seed: Some(cfg.seed),
        backend: "sa".into(),
    })
}

struct State {
    x: Vec<bool>,
    field: Vec<f64>,
    energy: f64,
}

impl State {
    fn new(q: &QuboProblem, adj: &[Vec<(usize, f64)>], x: Vec<bool>) -> Self {
        let mut field = q.linear().to_vec();
        let mut energy = 0.0;
        for i in 0..x.len() {
            if x[i] {
                energy += q.linear()[i];
                for &(j, c) in &adj[i] {
                    field[j] += c;
                    if j < i && x[j] {
                        energy += c;
                    }
                }
            }
        }
        Self { x, field, energy }
    }

    #[inline]
    fn delta(&self, i: usize) -> f64 {
        if self.x[i] {
            -self.field[i]
        } else {
            self.field[i]
        }
    }

    #[inline]
    fn flip(&mut self, i: usize, adj: &[Vec<(usize, f64)>], delta: f64) {
        let sign = if self.x[i] { -1.0 } else { 1.0 };
        self.x[i] = !self.x[i];
        self.energy += delta;
        for &(j, c) in &adj[i] {
            self.field[j] += sign * c;
        }
    }
}

fn anneal_once(q: &QuboProblem, adj: &[Vec<(usize, f64)>], cfg: &SaConfig, seed: u64) -> Vec<bool> {
    let n = q.n();
    let mut rng = rng(seed);
    let x0: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let mut s = State::new(q, adj, x0);
    let mut best_x = s.x.clone();
    let mut best_energy = s.energy;

    let decay = if cfg.sweeps > 1 {
        (cfg.t_final / cfg.t_initial).powf(1.0 / (cfg.sweeps - 1) as f64)
    } else {
        1.0
    };
    let mut t = cfg.t_initial;
    for _ in 0..cfg.sweeps {
        let beta = 1.0 / t;
        for i in 0..n {
            let d = s.delta(i);
            if d <= 0.0 || rng.random::<f64>() < (-d * beta).exp() {
                s.flip(i, adj, d);
                if s.energy < best_energy {
                    best_energy = s.energy;
                    best_x.copy_from_slice(&s.x);
                }
            }
        }
        t *= decay;
    }

    // Quench the best state to a single-flip local minimum.
    let mut s = State::new(q, adj, best_x);
    loop {
        let mut improved = false;
        for i in 0..n {
            let d = s.delta(i);
            if d < 0.0 {
                s.flip(i, adj, d);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    s.x
}
