//! Oracles shared by the integration tests. Nothing here calls into the
//! code under test except for data accessors.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// Log-uniform sample in `[lo, hi)`.
pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Central finite differences of `f` at `x`, coordinate by coordinate.
pub fn fd_grad(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|j| {
            probe[j] = x[j] + h;
            let up = f(&probe);
            probe[j] = x[j] - h;
            let down = f(&probe);
            probe[j] = x[j];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// `|a - b| / |b|`, falling back to the absolute error when `b` vanishes.
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let nb = norm(b);
    let d = dist(a, b);
    if nb > 0.0 {
        d / nb
    } else {
        d
    }
}

fn fw_smoothed_terms(x: &[f64], points: &[Vec<f64>], rho: f64, grad: &mut [f64]) -> f64 {
    grad.iter_mut().for_each(|g| *g = 0.0);
    let mut value = 0.0;
    for c in points {
        let r = dist(x, c);
        value += if r <= rho {
            r * r / (2.0 * rho)
        } else {
            r - rho / 2.0
        };
        let scale = 1.0 / rho.max(r);
        for ((g, xi), ci) in grad.iter_mut().zip(x).zip(c) {
            *g += scale * (xi - ci);
        }
    }
    value
}

/// Smoothed Fermat-Weber optimum from FISTA with gradient restarts and step
/// `rho / K`. Runs `max_iter` iterations or until the gradient vanishes to
/// machine precision. Returns `(x*, F*)`.
pub fn fw_smoothed_reference(points: &[Vec<f64>], rho: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let k = points.len();
    let n = points[0].len();
    let step = rho / k as f64;
    let mut x: Vec<f64> = (0..n)
        .map(|j| points.iter().map(|c| c[j]).sum::<f64>() / k as f64)
        .collect();
    let mut y = x.clone();
    let mut t = 1.0f64;
    let mut g = vec![0.0; n];
    let mut best = (x.clone(), fw_smoothed_terms(&x, points, rho, &mut g));
    for _ in 0..max_iter {
        fw_smoothed_terms(&y, points, rho, &mut g);
        let x_new: Vec<f64> = y.iter().zip(&g).map(|(yi, gi)| yi - step * gi).collect();
        let restart = dot(
            &g,
            &x_new.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>(),
        ) > 0.0;
        let t_new = if restart {
            1.0
        } else {
            0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt())
        };
        let beta = if restart { 0.0 } else { (t - 1.0) / t_new };
        y = x_new
            .iter()
            .zip(&x)
            .map(|(a, b)| a + beta * (a - b))
            .collect();
        x = x_new;
        t = t_new;
        let mut gx = vec![0.0; n];
        let fx = fw_smoothed_terms(&x, points, rho, &mut gx);
        if fx < best.1 {
            best = (x.clone(), fx);
        }
        if norm(&gx) <= 1e-14 * k as f64 {
            break;
        }
    }
    best
}

/// Dense periodic box-blur matrix, built tap by tap.
pub fn dense_blur(h: usize, w: usize, size: usize) -> DMatrix<f64> {
    let half = (size / 2) as isize;
    let weight = 1.0 / (size * size) as f64;
    let mut a = DMatrix::zeros(h * w, h * w);
    for r in 0..h {
        for c in 0..w {
            for di in -half..=half {
                for dj in -half..=half {
                    let rr = (r as isize + di).rem_euclid(h as isize) as usize;
                    let cc = (c as isize + dj).rem_euclid(w as isize) as usize;
                    a[(r * w + c, rr * w + cc)] += weight;
                }
            }
        }
    }
    a
}

/// Solves `(A^T A + shift I) z = rhs` by LU.
pub fn dense_normal_solve(a: &DMatrix<f64>, rhs: &[f64], shift: f64) -> Vec<f64> {
    let n = a.nrows();
    let m = a.transpose() * a + DMatrix::identity(n, n) * shift;
    let z = m
        .lu()
        .solve(&DVector::from_column_slice(rhs))
        .expect("normal matrix is positive definite");
    z.as_slice().to_vec()
}

pub fn dense_apply(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (a * DVector::from_column_slice(x)).as_slice().to_vec()
}

/// Direct periodic box convolution, `O(N size^2)`.
pub fn box_convolve(x: &[f64], h: usize, w: usize, size: usize) -> Vec<f64> {
    let half = (size / 2) as isize;
    let weight = 1.0 / (size * size) as f64;
    let mut out = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            let mut acc = 0.0;
            for di in -half..=half {
                for dj in -half..=half {
                    let rr = (r as isize + di).rem_euclid(h as isize) as usize;
                    let cc = (c as isize + dj).rem_euclid(w as isize) as usize;
                    acc += x[rr * w + cc];
                }
            }
            out[r * w + c] = weight * acc;
        }
    }
    out
}
