use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::baselines::{grad_step, nest_step};
use super::engine::{default_mu, famsa_step, famsas_step, msa_step, RunState};
use super::mixing::MixingMatrix;
use super::oracle::SplitProblem;
use crate::error::{Error, Result};
use crate::stopwatch::Stopwatch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Msa,
    Famsa,
    FamsaS,
    Grad,
    Nest,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Msa,
        Algorithm::Famsa,
        Algorithm::FamsaS,
        Algorithm::Grad,
        Algorithm::Nest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Msa => "msa",
            Algorithm::Famsa => "famsa",
            Algorithm::FamsaS => "famsa-s",
            Algorithm::Grad => "grad",
            Algorithm::Nest => "nest",
        }
    }

    pub fn is_splitting(self) -> bool {
        matches!(self, Algorithm::Msa | Algorithm::Famsa | Algorithm::FamsaS)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm '{s}'")))
    }
}

/// Step parameter of a run.
///
/// Splitting schemes use `mu` directly; gradient baselines use
/// `tau = mu / (K - 1)`, so a single `mu` compares all five methods on equal
/// footing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    /// `mu = 1 / max_i L(f_i)`.
    Default,
    Mu(f64),
    /// Gradient step; `mu = tau * (K - 1)`.
    Tau(f64),
}

impl StepSize {
    pub fn mu(self, problem: &SplitProblem) -> Result<f64> {
        let mu = match self {
            StepSize::Default => default_mu(problem)?,
            StepSize::Mu(mu) => mu,
            StepSize::Tau(tau) => tau * (problem.k() - 1) as f64,
        };
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "step must be positive, got mu = {mu}"
            )));
        }
        Ok(mu)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum MixingChoice {
    #[default]
    Uniform,
    Identity,
    Custom(MixingMatrix),
}

impl MixingChoice {
    fn matrix(&self, k: usize) -> Result<MixingMatrix> {
        match self {
            MixingChoice::Uniform => Ok(MixingMatrix::uniform(k)),
            MixingChoice::Identity => Ok(MixingMatrix::identity(k)),
            MixingChoice::Custom(d) if d.k() == k => Ok(d.clone()),
            MixingChoice::Custom(d) => Err(Error::DimensionMismatch {
                expected: k,
                got: d.k(),
            }),
        }
    }
}

pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Known optimal value used for the relative-error column and the stopping rule.
#[derive(Clone)]
pub struct Reference {
    pub f_star: f64,
    /// Objective evaluated for relerr. Defaults to `F` of the problem itself;
    /// set it to the original nonsmooth objective when the problem is a
    /// smoothed surrogate.
    pub objective: Option<ObjectiveFn>,
}

impl fmt::Debug for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Reference")
            .field("f_star", &self.f_star)
            .field("objective", &self.objective.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub step: StepSize,
    pub mixing: MixingChoice,
    pub max_iter: usize,
    /// Stop once relerr drops below this; only used with a reference.
    pub tol: f64,
    pub reference: Option<Reference>,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            step: StepSize::Default,
            mixing: MixingChoice::Uniform,
            max_iter: 500,
            tol: 1e-6,
            reference: None,
        }
    }
}

/// One trace row. For the single-iterate baselines every block is taken to
/// hold the current `x`, so `f_sum = K * F(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRow {
    pub k: usize,
    /// `min_i F(x^i_k)`
    pub f_min: f64,
    /// `sum_i F(x^i_k)`
    pub f_sum: f64,
    pub relerr: Option<f64>,
    pub elapsed_ms: f64,
}

/// Per-iteration trace, strictly increasing in `k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunRecord {
    rows: Vec<RunRow>,
}

impl RunRecord {
    pub fn push(&mut self, row: RunRow) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if row.k <= last.k {
                return Err(Error::InvalidParameter(format!(
                    "trace rows must increase in k ({} after {})",
                    row.k, last.k
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[RunRow] {
        &self.rows
    }

    pub fn last(&self) -> Option<&RunRow> {
        self.rows.last()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// relerr fell below the tolerance at the last recorded row.
    Converged,
    MaxIter,
    /// The objective became nonfinite at iteration `k`; the trace stops at `k - 1`.
    Diverged {
        k: usize,
    },
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub status: RunStatus,
    /// Iterate attaining `f_min` in the last recorded row.
    pub best: Vec<f64>,
    pub mu: f64,
}

impl RunOutcome {
    /// Iteration count in the sense of the summary tables: the last recorded `k`.
    pub fn iterations(&self) -> usize {
        self.record.last().map_or(0, |r| r.k)
    }
}

/// Runs `config.algorithm` from `x0`.
pub fn run(problem: &SplitProblem, config: &RunConfig, x0: &[f64]) -> Result<RunOutcome> {
    run_observed(problem, config, x0, |_, _| {})
}

/// Like [`run`], calling `observer(row, best_iterate)` for every recorded row.
pub fn run_observed(
    problem: &SplitProblem,
    config: &RunConfig,
    x0: &[f64],
    mut observer: impl FnMut(&RunRow, &[f64]),
) -> Result<RunOutcome> {
    problem.check_dim(x0)?;
    let mu = config.step.mu(problem)?;
    let k_blocks = problem.k();
    let tau = mu / (k_blocks - 1) as f64;
    let d = config.mixing.matrix(k_blocks)?;
    let clock = Stopwatch::start();

    let evaluate = |k: usize, blocks: &[&[f64]]| -> (RunRow, usize) {
        let values: Vec<f64> = blocks.iter().map(|b| problem.value(b)).collect();
        let (best, f_min) = argmin(&values);
        let f_sum = if blocks.len() == 1 {
            values[0] * k_blocks as f64
        } else {
            values.iter().sum()
        };
        let relerr = config.reference.as_ref().map(|r| {
            let g_min = match &r.objective {
                Some(obj) => blocks.iter().map(|b| obj(b)).fold(f64::INFINITY, f64::min),
                None => f_min,
            };
            (g_min - r.f_star).abs() / r.f_star.abs()
        });
        let row = RunRow {
            k,
            f_min,
            f_sum,
            relerr,
            elapsed_ms: clock.elapsed_ms(),
        };
        (row, best)
    };

    let mut record = RunRecord::default();
    let (row0, _) = evaluate(0, &[x0]);
    observer(&row0, x0);
    record.push(row0)?;
    let mut best = x0.to_vec();

    let mut state = match config.algorithm {
        Algorithm::FamsaS => RunState::new_single(k_blocks, x0),
        _ => RunState::new(k_blocks, x0),
    };
    // Baseline iterates: (x_{k}, y_{k}).
    let mut x_cur = x0.to_vec();
    let mut y_cur = x0.to_vec();

    let mut status = RunStatus::MaxIter;
    for k in 1..=config.max_iter {
        let (row, best_iter) = match config.algorithm {
            Algorithm::Msa | Algorithm::Famsa | Algorithm::FamsaS => {
                state = match config.algorithm {
                    Algorithm::Msa => msa_step(&state, &d, mu, problem)?,
                    Algorithm::Famsa => famsa_step(&state, &d, mu, problem)?,
                    _ => famsas_step(&state, mu, problem)?,
                };
                let blocks: Vec<&[f64]> = state.x.iter().map(Vec::as_slice).collect();
                let (row, b) = evaluate(k, &blocks);
                (row, state.x[b].clone())
            }
            Algorithm::Grad => {
                x_cur = grad_step(&x_cur, tau, problem);
                (evaluate(k, &[&x_cur]).0, x_cur.clone())
            }
            Algorithm::Nest => {
                let (x, y) = nest_step(&x_cur, &y_cur, k, tau, problem);
                x_cur = x;
                y_cur = y;
                (evaluate(k, &[&x_cur]).0, x_cur.clone())
            }
        };
        if !(row.f_min.is_finite() && row.f_sum.is_finite()) {
            status = RunStatus::Diverged { k };
            break;
        }
        observer(&row, &best_iter);
        best = best_iter;
        let done = row.relerr.is_some_and(|e| e < config.tol);
        record.push(row)?;
        if done {
            status = RunStatus::Converged;
            break;
        }
    }

    Ok(RunOutcome {
        record,
        status,
        best,
        mu,
    })
}

fn argmin(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        // NaN never wins, but a NaN in slot 0 is replaced by anything finite.
        if v < best.1 || best.1.is_nan() {
            best = (i, v);
        }
    }
    best
}
