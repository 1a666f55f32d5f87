//! Single-iterate gradient baselines on the full sum `F`.

use super::oracle::SplitProblem;

/// Gradient descent step `x - tau * grad F(x)`.
pub fn grad_step(x: &[f64], tau: f64, problem: &SplitProblem) -> Vec<f64> {
    let g = problem.grad(x);
    x.iter().zip(&g).map(|(xi, gi)| xi - tau * gi).collect()
}

/// Nesterov's accelerated gradient with the `(k - 1) / (k + 2)` momentum schedule.
///
/// Returns `(x_k, y_k)` from `(x_{k-1}, y_{k-1})`, where
/// `x_k = y_{k-1} - tau * grad F(y_{k-1})` and
/// `y_k = x_k + (k - 1) / (k + 2) * (x_k - x_{k-1})`. Start with `x_0 = y_0`
/// and `k = 1`.
pub fn nest_step(
    x_prev: &[f64],
    y_prev: &[f64],
    k: usize,
    tau: f64,
    problem: &SplitProblem,
) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(k >= 1);
    let x = grad_step(y_prev, tau, problem);
    let beta = (k as f64 - 1.0) / (k as f64 + 2.0);
    let y = x
        .iter()
        .zip(x_prev)
        .map(|(xi, pi)| xi + beta * (xi - pi))
        .collect();
    (x, y)
}
