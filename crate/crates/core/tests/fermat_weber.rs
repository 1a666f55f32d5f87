mod common;

use common::*;
use multisplit::fermat_weber::{
    fw_batch_step, fw_experiment, fw_objective, gen_instance, weiszfeld_reference,
    FwExperimentConfig,
};
use multisplit::splitting::run;
use multisplit::{Algorithm, RunConfig, RunStatus, StepSize};

#[test]
fn nest_beats_grad_with_small_tau() {
    let config = FwExperimentConfig {
        n: 50,
        k: 100,
        tau: 0.01,
        algorithms: vec![Algorithm::Grad, Algorithm::Nest],
        ..Default::default()
    };
    let table = fw_experiment(&config).unwrap();
    let (grad, nest) = (&table.rows[0], &table.rows[1]);
    assert_eq!(nest.status, RunStatus::Converged);
    assert!(
        nest.iter < grad.iter,
        "nest {} grad {}",
        nest.iter,
        grad.iter
    );
}

#[test]
fn capped_run_reports_relerr_at_cap() {
    let config = FwExperimentConfig {
        tau: 0.001,
        max_iter: 40,
        algorithms: vec![Algorithm::Msa, Algorithm::Grad],
        ..Default::default()
    };
    let table = fw_experiment(&config).unwrap();
    for row in &table.rows {
        assert_eq!(row.status, RunStatus::MaxIter);
        assert_eq!(row.iter, 40);
        assert!(row.relerr > config.tol);
    }
}

#[test]
fn weiszfeld_satisfies_optimality() {
    for seed in 0..10 {
        let inst = gen_instance(2 + seed as usize, 3 + 2 * seed as usize, seed);
        let reference = weiszfeld_reference(&inst, 1e-12).unwrap();
        // At a data point the condition is on the remaining terms: |sum| <= 1.
        let anchor = inst
            .points()
            .iter()
            .position(|c| dist(&reference.x_star, c) == 0.0);
        let mut g = vec![0.0; inst.n()];
        for (i, c) in inst.points().iter().enumerate() {
            if Some(i) == anchor {
                continue;
            }
            let r = dist(&reference.x_star, c);
            for (gj, (xj, cj)) in g.iter_mut().zip(reference.x_star.iter().zip(c)) {
                *gj += (xj - cj) / r;
            }
        }
        let limit = if anchor.is_some() { 1.0 } else { 1e-6 };
        assert!(norm(&g) <= limit, "seed {seed}: {}", norm(&g));
        assert!((fw_objective(&reference.x_star, &inst) - reference.f_star).abs() < 1e-12);
        let mut rng = rng(seed);
        for _ in 0..20 {
            let probe: Vec<f64> = reference
                .x_star
                .iter()
                .map(|x| x + rng_step(&mut rng))
                .collect();
            assert!(fw_objective(&probe, &inst) >= reference.f_star - 1e-12);
        }
    }
}

fn rng_step(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    uniform_vec(rng, 1, -1e-3, 1e-3)[0]
}

#[test]
fn msa_with_uniform_mixing_is_the_batched_scheme() {
    let inst = gen_instance(6, 9, 21);
    let rho = 1e-2;
    let mu = 0.05;
    let problem = inst.smoothed_problem(rho).unwrap();
    let mut config = RunConfig::new(Algorithm::Msa);
    config.step = StepSize::Mu(mu);
    config.max_iter = 25;
    let out = run(&problem, &config, &inst.centroid()).unwrap();

    let mut w = inst.centroid();
    let mut best = w.clone();
    for _ in 0..25 {
        let xs = fw_batch_step(&w, &inst, mu, rho);
        w = (0..inst.n())
            .map(|j| xs.iter().map(|x| x[j]).sum::<f64>() / xs.len() as f64)
            .collect();
        let values: Vec<f64> = xs.iter().map(|x| problem.value(x)).collect();
        let i = (0..values.len())
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap();
        best = xs[i].clone();
    }
    assert!(max_abs_diff(&out.best, &best) < 1e-12);
}

#[test]
fn runs_are_deterministic() {
    let config = FwExperimentConfig {
        n: 10,
        k: 12,
        algorithms: Algorithm::ALL.to_vec(),
        ..Default::default()
    };
    let a = fw_experiment(&config).unwrap();
    let b = fw_experiment(&config).unwrap();
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        assert_eq!(
            (ra.algorithm, ra.iter, ra.relerr),
            (rb.algorithm, rb.iter, rb.relerr)
        );
    }
}
