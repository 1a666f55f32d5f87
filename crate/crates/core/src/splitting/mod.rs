//! Generic K-function splitting engine.

mod baselines;
mod engine;
mod mixing;
mod oracle;
mod runner;

pub use baselines::{grad_step, nest_step};
pub use engine::{
    default_mu, famsa_step, famsas_step, msa_step, subproblem_point, surrogate_value, t_next,
    RunState,
};
pub use mixing::{mix, MixingMatrix};
pub use oracle::{ProxFunction, SmoothFunction, SplitProblem};
pub use runner::{
    run, run_observed, Algorithm, MixingChoice, Reference, RunConfig, RunOutcome, RunRecord,
    RunRow, RunStatus, StepSize,
};
