//! Nesterov smoothing of the l1 norm and the Euclidean norm.
//!
//! Both use the prox-function `d(u) = |u|^2 / 2` (strong convexity `sigma = 1`),
//! so the smoothed function `f_rho(x) = max_{u in U} <x, u> - rho d(u)` has a
//! `1/rho`-Lipschitz gradient and satisfies `f_rho <= f <= f_rho + rho D` with
//! `D = max_{u in U} d(u)`. The maximizations have Huber-type closed forms.

use crate::error::{Error, Result};
use crate::linalg::{dist, norm};
use crate::splitting::{ProxFunction, SmoothFunction};

/// `D` for the unit infinity-ball in `n` dimensions: `max |u|^2/2 = n/2`.
pub fn l1_prox_diameter(n: usize) -> f64 {
    n as f64 / 2.0
}

/// `D` for the unit Euclidean ball: `max |u|^2/2 = 1/2`.
pub const NORM_PROX_DIAMETER: f64 = 0.5;

/// Scalar Huber function `s^2/(2 rho)` for `|s| <= rho`, `|s| - rho/2` beyond.
#[inline]
pub fn huber(s: f64, rho: f64) -> f64 {
    let a = s.abs();
    if a <= rho {
        s * s / (2.0 * rho)
    } else {
        a - 0.5 * rho
    }
}

pub fn l1_smooth_value(x: &[f64], rho: f64) -> f64 {
    x.iter().map(|&s| huber(s, rho)).sum()
}

pub fn l1_smooth_grad(x: &[f64], rho: f64) -> Vec<f64> {
    x.iter().map(|&s| (s / rho).clamp(-1.0, 1.0)).collect()
}

/// Smoothed `|x - c|`.
pub fn norm_smooth_value(x: &[f64], c: &[f64], rho: f64) -> f64 {
    let r = dist(x, c);
    if r <= rho {
        r * r / (2.0 * rho)
    } else {
        r - 0.5 * rho
    }
}

/// `(x - c) / max(rho, |x - c|)`. Both branches agree at `|x - c| = rho`.
pub fn norm_smooth_grad(x: &[f64], c: &[f64], rho: f64) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    norm_smooth_grad_into(x, c, rho, &mut out);
    out
}

pub(crate) fn norm_smooth_grad_into(x: &[f64], c: &[f64], rho: f64, out: &mut [f64]) {
    let scale = 1.0 / rho.max(dist(x, c));
    for ((o, xi), ci) in out.iter_mut().zip(x).zip(c) {
        *o = (xi - ci) * scale;
    }
}

/// Smoothness parameter giving an `eps/2`-accurate surrogate: `eps / (2 D)`.
pub fn rho_for_epsilon(eps: f64, diameter: f64) -> f64 {
    eps / (2.0 * diameter)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "rho must be positive, got {rho}"
        )))
    }
}

/// Smoothed `|x|_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedL1 {
    rho: f64,
    dim: usize,
}

impl SmoothedL1 {
    pub fn new(dim: usize, rho: f64) -> Result<Self> {
        check_rho(rho)?;
        Ok(Self { rho, dim })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn diameter(&self) -> f64 {
        l1_prox_diameter(self.dim)
    }
}

impl SmoothFunction for SmoothedL1 {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        l1_smooth_value(x, self.rho)
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, &s) in out.iter_mut().zip(x) {
            *o = (s / self.rho).clamp(-1.0, 1.0);
        }
    }

    fn lipschitz(&self) -> f64 {
        1.0 / self.rho
    }
}

impl ProxFunction for SmoothedL1 {
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64> {
        let rho = self.rho;
        y.iter()
            .map(|&s| {
                if s.abs() <= rho + lambda {
                    s * rho / (rho + lambda)
                } else {
                    s - lambda * s.signum()
                }
            })
            .collect()
    }
}

/// Smoothed distance `|x - c|` to a fixed center.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedNorm {
    center: Vec<f64>,
    rho: f64,
}

impl SmoothedNorm {
    pub fn new(center: Vec<f64>, rho: f64) -> Result<Self> {
        check_rho(rho)?;
        if center.is_empty() {
            return Err(Error::InvalidParameter("center must be nonempty".into()));
        }
        Ok(Self { center, rho })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

impl SmoothFunction for SmoothedNorm {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        norm_smooth_value(x, &self.center, self.rho)
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        norm_smooth_grad_into(x, &self.center, self.rho, out);
    }

    fn lipschitz(&self) -> f64 {
        1.0 / self.rho
    }
}

impl ProxFunction for SmoothedNorm {
    /// Shrinks `y` toward the center: by the factor `rho / (rho + lambda)`
    /// inside radius `rho + lambda`, by a fixed distance `lambda` outside.
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64> {
        let d: Vec<f64> = y.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let r = norm(&d);
        let scale = if r <= self.rho + lambda {
            self.rho / (self.rho + lambda)
        } else {
            1.0 - lambda / r
        };
        self.center
            .iter()
            .zip(&d)
            .map(|(c, di)| c + scale * di)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn l1_examples() {
        assert_eq!(l1_smooth_value(&[0.0, 0.0], 0.1), 0.0);
        assert_eq!(l1_smooth_grad(&[0.0, 0.0], 0.1), vec![0.0, 0.0]);
        let rho = 0.3;
        assert!((l1_smooth_value(&[rho], rho) - rho / 2.0).abs() < 1e-15);
        assert_eq!(l1_smooth_grad(&[2.0, -0.5, 0.3], 0.3), vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn l1_value_matches_grid_maximization() {
        // max over u in [-1, 1] of s u - rho u^2 / 2 on a dense grid.
        let rho = 0.7;
        for &s in &[-2.0, -0.7, -0.2, 0.0, 0.35, 0.7, 1.3] {
            let best = (0..=200_000)
                .map(|i| -1.0 + 2.0 * i as f64 / 200_000.0)
                .map(|u| s * u - rho * u * u / 2.0)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((huber(s, rho) - best).abs() < 1e-9, "s = {s}");
        }
    }

    #[test]
    fn norm_examples() {
        let c = [1.0, -2.0];
        assert_eq!(norm_smooth_value(&c, &c, 0.5), 0.0);
        assert_eq!(norm_smooth_grad(&c, &c, 0.5), vec![0.0, 0.0]);
        // r = rho on both branches
        let x = [1.3, -2.4];
        let rho = dist(&x, &c);
        let inner = rho * rho / (2.0 * rho);
        assert!((norm_smooth_value(&x, &c, rho) - inner).abs() < 1e-15);
        assert!((inner - (rho - rho / 2.0)).abs() < 1e-15);
        // saturated region gives a unit vector
        let g = norm_smooth_grad(&[4.0, 2.0], &c, 0.5);
        assert!((norm(&g) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rho_selection() {
        assert_eq!(rho_for_epsilon(1.0, 0.5), 1.0);
        assert!((rho_for_epsilon(1e-3, l1_prox_diameter(100)) - 1e-5).abs() < 1e-20);
        // L = 1/rho = 2D/eps scales like 1/eps
        let d = 3.0;
        let l1 = 1.0 / rho_for_epsilon(1e-2, d);
        let l2 = 1.0 / rho_for_epsilon(1e-4, d);
        assert!((l2 / l1 - 100.0).abs() < 1e-9);
    }

    #[test]
    fn constructors_reject_bad_rho() {
        assert!(SmoothedL1::new(3, 0.0).is_err());
        assert!(SmoothedNorm::new(vec![0.0], -1.0).is_err());
        assert!(SmoothedNorm::new(vec![], 1.0).is_err());
    }

    fn prox_residual<F: ProxFunction>(f: &F, lambda: f64, y: &[f64]) -> f64 {
        let p = f.prox(lambda, y);
        let g = f.grad(&p);
        g.iter()
            .zip(p.iter().zip(y))
            .map(|(gi, (pi, yi))| (gi + (pi - yi) / lambda).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    proptest! {
        #[test]
        fn l1_prox_is_optimal(
            y in proptest::collection::vec(-3.0f64..3.0, 1..8),
            rho in 0.01f64..2.0,
            lambda in 0.01f64..2.0,
        ) {
            let f = SmoothedL1::new(y.len(), rho).unwrap();
            prop_assert!(prox_residual(&f, lambda, &y) < 1e-10);
        }

        #[test]
        fn norm_prox_is_optimal(
            y in proptest::collection::vec(-3.0f64..3.0, 1..8),
            rho in 0.01f64..2.0,
            lambda in 0.01f64..2.0,
        ) {
            let c: Vec<f64> = (0..y.len()).map(|i| 0.1 * i as f64).collect();
            let f = SmoothedNorm::new(c, rho).unwrap();
            prop_assert!(prox_residual(&f, lambda, &y) < 1e-10);
        }

        #[test]
        fn smoothing_is_monotone_in_rho(
            x in proptest::collection::vec(-3.0f64..3.0, 1..8),
            r1 in 0.001f64..1.0,
            r2 in 0.001f64..1.0,
        ) {
            let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
            prop_assert!(l1_smooth_value(&x, hi) <= l1_smooth_value(&x, lo) + 1e-12);
            let c = vec![0.0; x.len()];
            prop_assert!(norm_smooth_value(&x, &c, hi) <= norm_smooth_value(&x, &c, lo) + 1e-12);
        }

        #[test]
        fn gradients_are_lipschitz(
            x in proptest::collection::vec(-1.0f64..1.0, 4),
            y in proptest::collection::vec(-1.0f64..1.0, 4),
            rho in 0.01f64..1.0,
        ) {
            let d = dist(&x, &y);
            prop_assume!(d > 1e-9);
            let gl = dist(&l1_smooth_grad(&x, rho), &l1_smooth_grad(&y, rho));
            prop_assert!(gl <= d / rho * (1.0 + 1e-9));
            let c = vec![0.2, -0.1, 0.0, 0.3];
            let gn = dist(&norm_smooth_grad(&x, &c, rho), &norm_smooth_grad(&y, &c, rho));
            prop_assert!(gn <= d / rho * (1.0 + 1e-9));
        }
    }
}
