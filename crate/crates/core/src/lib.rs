//! Multiple-splitting first-order methods for minimizing `F(x) = f_1(x) + ... + f_K(x)`.
//!
//! Each `f_i` is smooth with a Lipschitz gradient and exposes a proximal map.
//! Every iteration solves `K` independent subproblems: the i-th keeps `f_i`
//! exact and linearizes the remaining `K - 1` functions around a shared anchor.
//! The block results are then recombined through a doubly stochastic matrix.
//!
//! Three schemes are provided:
//! - `Msa`: plain multiple splitting, `O(1/k)` objective gap.
//! - `Famsa`: accelerated variant with per-block momentum, `O(1/k^2)`.
//! - `FamsaS`: accelerated variant that carries a single averaged iterate.
//!
//! Classical gradient descent and Nesterov's accelerated gradient are included
//! as baselines sharing the same run loop and trace format.
//!
//! Nonsmooth terms are handled by smoothing (see [`smoothing`]). Two reference
//! applications live in [`fermat_weber`] (geometric median) and [`deblur`]
//! (TV + wavelet image deblurring).

pub mod deblur;
pub mod error;
pub mod fermat_weber;
pub mod linalg;
pub mod smoothing;
pub mod splitting;
mod stopwatch;

pub use error::{Error, Result};
pub use splitting::{
    run, run_observed, Algorithm, MixingChoice, MixingMatrix, ProxFunction, Reference, RunConfig,
    RunOutcome, RunRecord, RunRow, RunState, RunStatus, SmoothFunction, SplitProblem, StepSize,
};
