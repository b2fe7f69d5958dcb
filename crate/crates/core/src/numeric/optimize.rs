use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Line-search steps shorter than this end a descent run.
    pub step_tolerance: f64,
    /// Absolute accuracy expected of predicate values; also the zero threshold.
    pub value_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iterations: 500,
            step_tolerance: 1e-10,
            value_tolerance: 1e-6,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 || self.max_iterations < 1 {
            return Err(Error::Config(
                "restarts and max_iterations must be at least 1".into(),
            ));
        }
        if !(self.step_tolerance > 0.0 && self.value_tolerance > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Best value found by a minimization. `converged` is false when the winning run
/// hit `max_iterations`; the value is then only known to be an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub converged: bool,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            converged: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Run {
    pub value: f64,
    pub converged: bool,
}

/// Runs `restarts` independent descents, restart `r` drawing from ChaCha stream
/// `r` of `cfg.seed`, and keeps the smallest value (lowest index on ties).
pub(crate) fn multistart<F>(cfg: &OptimizerConfig, descend: F) -> Estimate
where
    F: Fn(usize, &mut ChaCha8Rng) -> Run + Sync,
{
    let runs: Vec<Run> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            descend(r, &mut rng)
        })
        .collect();
    let best = runs
        .iter()
        .fold(None::<Run>, |acc, r| match acc {
            Some(a) if a.value <= r.value => Some(a),
            _ => Some(*r),
        })
        .expect("at least one restart");
    Estimate {
        value: best.value,
        converged: best.converged,
    }
}

/// Armijo backtracking descent on a manifold. `eval` returns the objective and a
/// gradient handle at a point; `step` moves a point along minus the gradient
/// by `t`; `grad_sq` is the squared gradient norm.
pub(crate) fn descend<P, G>(
    cfg: &OptimizerConfig,
    start: P,
    eval: impl Fn(&P) -> (f64, G),
    grad_sq: impl Fn(&G) -> f64,
    step: impl Fn(&P, &G, f64) -> P,
    objective: impl Fn(&P) -> f64,
) -> Run {
    let (_, run) = descend_inner(cfg, start, eval, grad_sq, step, objective);
    run
}

/// As [`descend`], returning the final point instead of the value.
pub(crate) fn descend_point<P, G>(
    cfg: &OptimizerConfig,
    start: P,
    eval: impl Fn(&P) -> (f64, G),
    grad_sq: impl Fn(&G) -> f64,
    step: impl Fn(&P, &G, f64) -> P,
    objective: impl Fn(&P) -> f64,
) -> P {
    descend_inner(cfg, start, eval, grad_sq, step, objective).0
}

fn descend_inner<P, G>(
    cfg: &OptimizerConfig,
    start: P,
    eval: impl Fn(&P) -> (f64, G),
    grad_sq: impl Fn(&G) -> f64,
    step: impl Fn(&P, &G, f64) -> P,
    objective: impl Fn(&P) -> f64,
) -> (P, Run) {
    let mut point = start;
    let mut t = 1.0;
    for _ in 0..cfg.max_iterations {
        let (value, grad) = eval(&point);
        let g2 = grad_sq(&grad);
        if value <= 1e-15 || g2 <= 1e-28 {
            return (
                point,
                Run {
                    value,
                    converged: true,
                },
            );
        }
        let mut accepted = None;
        while t >= cfg.step_tolerance {
            let candidate = step(&point, &grad, t);
            let v = objective(&candidate);
            if v <= value - 1e-4 * t * g2 {
                accepted = Some(candidate);
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some(p) => {
                point = p;
                t = (t * 2.0).min(1e3);
            }
            None => {
                return (
                    point,
                    Run {
                        value,
                        converged: true,
                    },
                )
            }
        }
    }
    let value = objective(&point);
    (
        point,
        Run {
            value,
            converged: false,
        },
    )
}
