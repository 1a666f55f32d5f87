use super::mixing::{mix, MixingMatrix};
use super::oracle::SplitProblem;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist_sq, dot};

/// Largest step parameter covered by the convergence guarantees: `1 / max_i L(f_i)`.
pub fn default_mu(problem: &SplitProblem) -> Result<f64> {
    let mut max_l = 0.0f64;
    for (i, f) in problem.functions().iter().enumerate() {
        let l = f.lipschitz();
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "function {i} has Lipschitz constant {l}"
            )));
        }
        max_l = max_l.max(l);
    }
    Ok(1.0 / max_l)
}

/// Momentum scalar recurrence `t' = (1 + sqrt(1 + 4 t^2)) / 2`.
#[inline]
pub fn t_next(t: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt())
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mu must be positive and finite, got {mu}"
        )))
    }
}

/// Iterate storage shared by the three splitting schemes.
///
/// `x` always holds one block per function. `w` holds the anchors for the
/// next iteration and `w_hat` the latest mixed blocks; both have length `K`
/// for MSA/FaMSA and length one for FaMSA-s, whose anchors all coincide.
/// After `k` completed iterations `x` holds `x_(k)`, `w_hat` holds `w_hat_(k)`
/// and `t` holds `t_(k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunState {
    pub k: usize,
    pub x: Vec<Vec<f64>>,
    pub w: Vec<Vec<f64>>,
    pub w_hat: Vec<Vec<f64>>,
    pub t: f64,
}

impl RunState {
    /// All blocks, anchors and mixed blocks start at `x0`; `t_1 = 1`.
    pub fn new(blocks: usize, x0: &[f64]) -> Self {
        let copies = vec![x0.to_vec(); blocks];
        Self {
            k: 0,
            x: copies.clone(),
            w: copies.clone(),
            w_hat: copies,
            t: 1.0,
        }
    }

    /// Start state for FaMSA-s: one shared anchor and one mixed iterate.
    pub fn new_single(blocks: usize, x0: &[f64]) -> Self {
        Self {
            k: 0,
            x: vec![x0.to_vec(); blocks],
            w: vec![x0.to_vec()],
            w_hat: vec![x0.to_vec()],
            t: 1.0,
        }
    }

    /// Anchor used by block `i`.
    pub fn anchor(&self, i: usize) -> &[f64] {
        if self.w.len() == 1 {
            &self.w[0]
        } else {
            &self.w[i]
        }
    }

    fn check(&self, problem: &SplitProblem, anchors: usize) -> Result<()> {
        if self.x.len() != problem.k() {
            return Err(Error::DimensionMismatch {
                expected: problem.k(),
                got: self.x.len(),
            });
        }
        if self.w.len() != anchors || self.w_hat.len() != anchors {
            return Err(Error::InvalidParameter(format!(
                "state carries {} anchors, this scheme needs {anchors}",
                self.w.len()
            )));
        }
        for v in self.x.iter().chain(&self.w).chain(&self.w_hat) {
            problem.check_dim(v)?;
        }
        Ok(())
    }
}

/// Solves the `K` block subproblems `p_i(w^i, ..., w^i)`.
///
/// With every `f_j` linearized at the same anchor `w`, the i-th subproblem is
/// a prox of `f_i` with step `lambda = mu / (K - 1)` evaluated at
/// `z_i = w - lambda * sum_{j != i} grad f_j(w)`. Gradients are reused across
/// consecutive blocks that share a bit-identical anchor.
pub(crate) fn block_points(
    problem: &SplitProblem,
    anchor: impl Fn(usize) -> usize,
    anchors: &[Vec<f64>],
    mu: f64,
) -> Result<Vec<Vec<f64>>> {
    check_mu(mu)?;
    let k = problem.k();
    if k < 2 {
        return Err(Error::InvalidProblem("splitting needs K >= 2".into()));
    }
    let lambda = mu / (k - 1) as f64;
    let n = problem.dim();
    let mut cache: Option<(usize, Vec<Vec<f64>>, Vec<f64>)> = None;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let a = anchor(i);
        let w = &anchors[a];
        let hit = matches!(&cache, Some((prev, ..)) if *prev == a || anchors[*prev] == *w);
        if !hit {
            let grads = problem.grads(w);
            let total = sum_in_order(&grads, n);
            cache = Some((a, grads, total));
        }
        let (_, grads, total) = cache.as_ref().expect("gradient cache filled above");
        out.push(prox_at_linearization(
            problem, i, w, &grads[i], total, lambda,
        ));
    }
    Ok(out)
}

/// Minimizer over `u` of the i-th surrogate `Q_i(w, ..., w, u, w, ..., w)`.
pub fn subproblem_point(i: usize, w: &[f64], mu: f64, problem: &SplitProblem) -> Result<Vec<f64>> {
    check_mu(mu)?;
    problem.check_dim(w)?;
    if i >= problem.k() {
        return Err(Error::InvalidParameter(format!(
            "block index {i} out of range"
        )));
    }
    let lambda = mu / (problem.k() - 1) as f64;
    let grads = problem.grads(w);
    let total = sum_in_order(&grads, w.len());
    Ok(prox_at_linearization(
        problem, i, w, &grads[i], &total, lambda,
    ))
}

fn sum_in_order(grads: &[Vec<f64>], n: usize) -> Vec<f64> {
    let mut total = vec![0.0; n];
    for g in grads {
        axpy(1.0, g, &mut total);
    }
    total
}

fn prox_at_linearization(
    problem: &SplitProblem,
    i: usize,
    w: &[f64],
    own_grad: &[f64],
    total: &[f64],
    lambda: f64,
) -> Vec<f64> {
    let z: Vec<f64> = w
        .iter()
        .zip(total.iter().zip(own_grad))
        .map(|(wj, (tj, gj))| wj - lambda * (tj - gj))
        .collect();
    problem.function(i).prox(lambda, &z)
}

/// `Q_i` with all linearization points equal to `v`:
/// `f_i(p) + sum_{j != i} [f_j(v) + <grad f_j(v), p - v> + |p - v|^2 / (2 mu)]`.
pub fn surrogate_value(i: usize, v: &[f64], p: &[f64], mu: f64, problem: &SplitProblem) -> f64 {
    let d: Vec<f64> = p.iter().zip(v).map(|(a, b)| a - b).collect();
    let prox_term = dist_sq(p, v) / (2.0 * mu);
    let mut q = problem.function(i).value(p);
    for (j, f) in problem.functions().iter().enumerate() {
        if j != i {
            q += f.value(v) + dot(&f.grad(v), &d) + prox_term;
        }
    }
    q
}

/// One MSA iteration: solve every block at its own anchor, then mix.
pub fn msa_step(
    state: &RunState,
    d: &MixingMatrix,
    mu: f64,
    problem: &SplitProblem,
) -> Result<RunState> {
    state.check(problem, problem.k())?;
    let x = block_points(problem, |i| i, &state.w, mu)?;
    let w = mix(&x, d)?;
    Ok(RunState {
        k: state.k + 1,
        w_hat: w.clone(),
        x,
        w,
        t: state.t,
    })
}

/// One FaMSA iteration with per-block momentum.
pub fn famsa_step(
    state: &RunState,
    d: &MixingMatrix,
    mu: f64,
    problem: &SplitProblem,
) -> Result<RunState> {
    state.check(problem, problem.k())?;
    let x = block_points(problem, |i| i, &state.w, mu)?;
    let w_hat = mix(&x, d)?;
    let t = state.t;
    let t1 = t_next(t);
    let w = x
        .iter()
        .zip(w_hat.iter().zip(&state.w_hat))
        .map(|(xi, (hi, prev))| {
            xi.iter()
                .zip(hi.iter().zip(prev))
                .map(|(&xv, (&hv, &pv))| hv + (t * (xv - pv) - (hv - pv)) / t1)
                .collect()
        })
        .collect();
    Ok(RunState {
        k: state.k + 1,
        x,
        w,
        w_hat,
        t: t1,
    })
}

/// One FaMSA-s iteration: uniform mixing with a single averaged iterate.
pub fn famsas_step(state: &RunState, mu: f64, problem: &SplitProblem) -> Result<RunState> {
    state.check(problem, 1)?;
    let x = block_points(problem, |_| 0, &state.w, mu)?;
    let hat = crate::linalg::mean(&x);
    let t = state.t;
    let t1 = t_next(t);
    let beta = (t - 1.0) / t1;
    let w: Vec<f64> = hat
        .iter()
        .zip(&state.w_hat[0])
        .map(|(h, p)| h + beta * (h - p))
        .collect();
    Ok(RunState {
        k: state.k + 1,
        x,
        w: vec![w],
        w_hat: vec![hat],
        t: t1,
    })
}
