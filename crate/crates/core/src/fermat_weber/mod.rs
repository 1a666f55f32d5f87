//! Smoothed Fermat-Weber problem: minimize `sum_i |x - c^i|` over `x`.
//!
//! Each distance is replaced by its Huber smoothing with parameter `rho`, whose
//! gradient is `1/rho`-Lipschitz, and the smoothed sum is handed to the
//! splitting engine. The block subproblem has a closed form
//! ([`fw_prox_closed_form`]) and the `K` blocks of one uniform-mixing
//! iteration can be produced for roughly the price of one full gradient
//! ([`fw_batch_step`]).

mod experiment;
mod instance;
mod weiszfeld;

pub use experiment::{
    fw_experiment, fw_experiment_on, fw_reference, FwExperimentConfig, FwRow, FwTable,
};
pub use instance::{gen_instance, FwInstance};
pub use weiszfeld::{weiszfeld_reference, FwReference};

use crate::linalg::dist;
use crate::smoothing::norm_smooth_value;

/// Nonsmooth objective `sum_i |x - c^i|`.
pub fn fw_objective(x: &[f64], instance: &FwInstance) -> f64 {
    instance.points().iter().map(|c| dist(x, c)).sum()
}

/// Smoothed objective `sum_i f_i^rho(x)`.
pub fn fw_objective_smoothed(x: &[f64], instance: &FwInstance, rho: f64) -> f64 {
    instance
        .points()
        .iter()
        .map(|c| norm_smooth_value(x, c, rho))
        .sum()
}

/// Closed-form minimizer of
/// `f_i^rho(u) + (K - 1)/(2 mu) |u - z|^2` (the i-th block subproblem after
/// completing the square), returned as a point on the segment from `c^i` to `z`.
pub fn fw_prox_closed_form(
    i: usize,
    z: &[f64],
    mu: f64,
    rho: f64,
    k: usize,
    instance: &FwInstance,
) -> Vec<f64> {
    let c = &instance.points()[i];
    let km1 = (k - 1) as f64;
    let r = dist(z, c);
    let scale = if r <= rho + mu / km1 {
        rho * km1 / (mu + rho * km1)
    } else {
        (km1 * r - mu) / (km1 * r)
    };
    c.iter()
        .zip(z)
        .map(|(ci, zi)| ci + scale * (zi - ci))
        .collect()
}

/// All `K` block points for a shared anchor `w`, computed with a single pass
/// over the smoothed gradients:
///
/// ```text
/// zhat = sum_j (w - c^j) / max(rho, |w - c^j|)
/// z^i  = w - mu/(K-1) * (zhat - (w - c^i) / max(rho, |w - c^i|))
/// x^i  = c^i + (1 - mu / max((K-1)|z^i - c^i|, mu + rho (K-1))) (z^i - c^i)
/// ```
pub fn fw_batch_step(w: &[f64], instance: &FwInstance, mu: f64, rho: f64) -> Vec<Vec<f64>> {
    let k = instance.k();
    let km1 = (k - 1) as f64;
    let n = w.len();
    let grads: Vec<Vec<f64>> = instance
        .points()
        .iter()
        .map(|c| crate::smoothing::norm_smooth_grad(w, c, rho))
        .collect();
    let mut zhat = vec![0.0; n];
    for g in &grads {
        crate::linalg::axpy(1.0, g, &mut zhat);
    }
    let step = mu / km1;
    instance
        .points()
        .iter()
        .zip(&grads)
        .map(|(c, g)| {
            let z: Vec<f64> = w
                .iter()
                .zip(zhat.iter().zip(g))
                .map(|(wj, (hj, gj))| wj - step * (hj - gj))
                .collect();
            let r = dist(&z, c);
            let shrink = 1.0 - mu / (km1 * r).max(mu + rho * km1);
            c.iter()
                .zip(&z)
                .map(|(ci, zi)| ci + shrink * (zi - ci))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn objective_examples() {
        let inst = FwInstance::from_points(vec![vec![1.5, 2.0]; 3], 0).unwrap();
        assert_eq!(fw_objective(&[1.5, 2.0], &inst), 0.0);
        assert_eq!(fw_objective_smoothed(&[1.5, 2.0], &inst, 0.1), 0.0);

        let inst = FwInstance::from_points(vec![vec![-1.0], vec![1.0]], 0).unwrap();
        assert_eq!(fw_objective(&[0.0], &inst), 2.0);
    }

    #[test]
    fn smoothed_objective_sandwich() {
        let inst = gen_instance(5, 7, 3);
        let rho = 0.5;
        for s in 0..20 {
            let x: Vec<f64> = (0..5).map(|j| ((s * 7 + j) as f64).sin() * 3.0).collect();
            let f = fw_objective(&x, &inst);
            let fs = fw_objective_smoothed(&x, &inst, rho);
            assert!(fs <= f + 1e-12);
            assert!(f <= fs + inst.k() as f64 * rho / 2.0 + 1e-12);
        }
    }

    #[test]
    fn prox_collapses_at_center() {
        let inst = gen_instance(4, 3, 1);
        let c = inst.points()[1].clone();
        let u = fw_prox_closed_form(1, &c, 0.3, 0.01, 3, &inst);
        assert_eq!(u, c);
    }

    #[test]
    fn prox_branch_continuity() {
        let inst = gen_instance(3, 4, 2);
        let (mu, rho, k) = (0.6, 0.05, 4);
        let c = inst.points()[2].clone();
        let radius = rho + mu / (k - 1) as f64;
        let dir = [0.6, -0.8, 0.0];
        let z: Vec<f64> = c.iter().zip(&dir).map(|(ci, d)| ci + radius * d).collect();
        let u = fw_prox_closed_form(2, &z, mu, rho, k, &inst);
        assert!((dist(&u, &c) - rho).abs() < 1e-12);
        // The outer formula at the same radius.
        let km1 = (k - 1) as f64;
        let outer = (km1 * radius - mu) / (km1 * radius) * radius;
        assert!((outer - rho).abs() < 1e-12);
    }

    #[test]
    fn batch_step_symmetric_points() {
        let inst = FwInstance::from_points(vec![vec![-1.0], vec![1.0]], 0).unwrap();
        let xs = fw_batch_step(&[0.0], &inst, 0.5, 0.01);
        assert!((xs[0][0] + xs[1][0]).abs() < 1e-15);
    }

    #[test]
    fn batch_step_matches_closed_form() {
        let inst = gen_instance(6, 5, 9);
        let (mu, rho) = (0.2, 0.05);
        let w = inst.centroid();
        let xs = fw_batch_step(&w, &inst, mu, rho);
        let km1 = 4.0;
        let grads: Vec<Vec<f64>> = inst
            .points()
            .iter()
            .map(|c| crate::smoothing::norm_smooth_grad(&w, c, rho))
            .collect();
        for (i, x) in xs.iter().enumerate() {
            let mut z = w.clone();
            for (j, g) in grads.iter().enumerate() {
                if j != i {
                    crate::linalg::axpy(-mu / km1, g, &mut z);
                }
            }
            let u = fw_prox_closed_form(i, &z, mu, rho, 5, &inst);
            assert!(max_abs_diff(&u, x) < 1e-12);
        }
    }
}
