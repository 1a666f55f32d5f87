use std::sync::Arc;

use super::{fw_objective, gen_instance, weiszfeld_reference, FwInstance, FwReference};
use crate::error::Result;
use crate::splitting::{
    run, Algorithm, MixingChoice, Reference, RunConfig, RunOutcome, RunStatus, StepSize,
};
use crate::stopwatch::Stopwatch;

/// One benchmark cell: an instance, a step size and the algorithms to compare.
#[derive(Debug, Clone)]
pub struct FwExperimentConfig {
    pub n: usize,
    pub k: usize,
    /// Gradient step of the baselines; splitting methods use `mu = tau (K - 1)`.
    pub tau: f64,
    pub rho: f64,
    pub tol: f64,
    pub seed: u64,
    pub max_iter: usize,
    pub algorithms: Vec<Algorithm>,
}

impl Default for FwExperimentConfig {
    fn default() -> Self {
        Self {
            n: 50,
            k: 50,
            tau: 0.1,
            rho: 1e-3,
            tol: 1e-6,
            seed: 0,
            max_iter: 500,
            algorithms: vec![
                Algorithm::Msa,
                Algorithm::FamsaS,
                Algorithm::Grad,
                Algorithm::Nest,
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FwRow {
    pub algorithm: Algorithm,
    pub iter: usize,
    pub relerr: f64,
    pub time_s: f64,
    pub status: RunStatus,
}

#[derive(Debug, Clone)]
pub struct FwTable {
    pub instance: FwInstance,
    pub reference: FwReference,
    /// Wall time of the reference solve in seconds.
    pub reference_s: f64,
    pub rows: Vec<FwRow>,
}

impl FwExperimentConfig {
    /// Run config for one algorithm, with relerr measured on the nonsmooth objective.
    pub fn run_config(
        &self,
        algorithm: Algorithm,
        instance: &FwInstance,
        f_star: f64,
    ) -> RunConfig {
        let inst = instance.clone();
        RunConfig {
            algorithm,
            step: StepSize::Tau(self.tau),
            mixing: MixingChoice::Uniform,
            max_iter: self.max_iter,
            tol: self.tol,
            reference: Some(Reference {
                f_star,
                objective: Some(Arc::new(move |x: &[f64]| fw_objective(x, &inst))),
            }),
        }
    }
}

/// Runs every configured algorithm from the centroid and reports iterations to
/// `relerr < tol` (or the cap), final relerr and wall time.
pub fn fw_experiment(config: &FwExperimentConfig) -> Result<FwTable> {
    let instance = gen_instance(config.n, config.k, config.seed);
    fw_experiment_on(config, instance)
}

/// Weiszfeld reference at the tolerance used by the experiments, `1e-12 sqrt(1 + n)`.
pub fn fw_reference(instance: &FwInstance) -> Result<FwReference> {
    weiszfeld_reference(instance, 1e-12 * (1.0 + instance.n() as f64).sqrt())
}

pub fn fw_experiment_on(config: &FwExperimentConfig, instance: FwInstance) -> Result<FwTable> {
    let clock = Stopwatch::start();
    let reference = fw_reference(&instance)?;
    let reference_s = clock.elapsed_ms() / 1e3;
    let problem = instance.smoothed_problem(config.rho)?;
    let x0 = instance.centroid();
    let rows = config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let rc = config.run_config(algorithm, &instance, reference.f_star);
            let outcome: RunOutcome = run(&problem, &rc, &x0)?;
            let last = outcome
                .record
                .last()
                .copied()
                .expect("trace has an initial row");
            Ok(FwRow {
                algorithm,
                iter: outcome.iterations(),
                relerr: last.relerr.unwrap_or(f64::NAN),
                time_s: last.elapsed_ms / 1e3,
                status: outcome.status,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FwTable {
        instance,
        reference,
        reference_s,
        rows,
    })
}
