use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::blur::BlurOperator;
use super::image::Image;
use super::tv::{chambolle_slice, SmoothedTv};
use super::wavelet::HaarWavelet;
use crate::error::{Error, Result};
use crate::smoothing::huber;
use crate::splitting::{
    famsa_step, famsas_step, msa_step, run_observed, Algorithm, MixingChoice, MixingMatrix,
    ProxFunction, RunConfig, RunState, RunStatus, SmoothFunction, SplitProblem, StepSize,
};

#[derive(Debug, Clone, PartialEq)]
pub struct DeblurParams {
    /// TV weight.
    pub alpha: f64,
    /// Wavelet l1 weight.
    pub beta: f64,
    /// TV smoothing.
    pub delta: f64,
    /// Wavelet l1 smoothing.
    pub sigma: f64,
    pub mu: f64,
    pub noise_sd: f64,
    pub seed: u64,
    /// Chambolle iterations per TV block solve.
    pub inner_iters: usize,
    pub levels: usize,
    pub blur_size: usize,
}

impl Default for DeblurParams {
    fn default() -> Self {
        Self {
            alpha: 0.001,
            beta: 0.035,
            delta: 1e-4,
            sigma: 1e-4,
            mu: 1.0,
            noise_sd: 0.56,
            seed: 0,
            inner_iters: 10,
            levels: 4,
            blur_size: 9,
        }
    }
}

/// `f_1`: TV term. Value and gradient come from the smoothed TV; the block
/// solve is Chambolle's denoiser on the nonsmooth TV, so `prox` is inexact.
#[derive(Debug, Clone)]
pub struct TvTerm {
    pub smoothed: SmoothedTv,
    pub inner_iters: usize,
}

impl SmoothFunction for TvTerm {
    fn dim(&self) -> usize {
        self.smoothed.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.smoothed.value(x)
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        self.smoothed.grad_into(x, out)
    }

    fn lipschitz(&self) -> f64 {
        self.smoothed.lipschitz()
    }
}

impl ProxFunction for TvTerm {
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64> {
        let s = &self.smoothed;
        chambolle_slice(y, s.height, s.width, lambda * s.alpha, self.inner_iters)
    }
}

/// `f_2^sigma(x) = beta * sum_j huber((Phi x)_j, sigma)`.
#[derive(Debug, Clone)]
pub struct WaveletL1 {
    pub wavelet: HaarWavelet,
    pub beta: f64,
    pub sigma: f64,
}

impl SmoothFunction for WaveletL1 {
    fn dim(&self) -> usize {
        let (h, w) = self.wavelet.shape();
        h * w
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.beta
            * self
                .wavelet
                .forward(x)
                .iter()
                .map(|&c| huber(c, self.sigma))
                .sum::<f64>()
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        let u: Vec<f64> = self
            .wavelet
            .forward(x)
            .iter()
            .map(|&c| self.beta * (c / self.sigma).clamp(-1.0, 1.0))
            .collect();
        out.copy_from_slice(&self.wavelet.inverse(&u));
    }

    fn lipschitz(&self) -> f64 {
        self.beta / self.sigma
    }
}

impl ProxFunction for WaveletL1 {
    /// Exact: Huber shrinkage of the Haar coefficients,
    /// `c - lambda beta clamp(c / (sigma + lambda beta), -1, 1)`.
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64> {
        let lb = lambda * self.beta;
        let shrunk: Vec<f64> = self
            .wavelet
            .forward(y)
            .iter()
            .map(|&c| c - lb * (c / (self.sigma + lb)).clamp(-1.0, 1.0))
            .collect();
        self.wavelet.inverse(&shrunk)
    }
}

/// `f_3(x) = |A x - b|^2 / 2`; its block solve is an exact Fourier-domain solve.
#[derive(Debug, Clone)]
pub struct DataFidelity {
    pub blur: Arc<BlurOperator>,
    pub b: Vec<f64>,
    atb: Vec<f64>,
}

impl DataFidelity {
    pub fn new(blur: Arc<BlurOperator>, b: Vec<f64>) -> Self {
        let atb = blur.adjoint(&b);
        Self { blur, b, atb }
    }
}

impl SmoothFunction for DataFidelity {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        0.5 * crate::linalg::dist_sq(&self.blur.apply(x), &self.b)
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        let r = crate::linalg::sub(&self.blur.apply(x), &self.b);
        out.copy_from_slice(&self.blur.adjoint(&r));
    }

    fn lipschitz(&self) -> f64 {
        self.blur.norm_sq()
    }
}

impl ProxFunction for DataFidelity {
    /// Solves `(A^T A + I / lambda) z = A^T b + y / lambda`.
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64> {
        let rhs: Vec<f64> = self
            .atb
            .iter()
            .zip(y)
            .map(|(a, v)| a + v / lambda)
            .collect();
        self.blur.normal_solve(&rhs, 1.0 / lambda)
    }
}

/// Data-block solve written out in terms of the anchor and the other two gradients:
/// `(A^T A + 2/mu I) z = A^T b - grad_1 + (2/mu) w - grad_2`.
pub fn data_solve(
    w: &[f64],
    grad_tv: &[f64],
    grad_wavelet: &[f64],
    blur: &BlurOperator,
    b: &[f64],
    mu: f64,
) -> Vec<f64> {
    let atb = blur.adjoint(b);
    let shift = 2.0 / mu;
    let rhs: Vec<f64> = (0..w.len())
        .map(|p| atb[p] - grad_tv[p] + shift * w[p] - grad_wavelet[p])
        .collect();
    blur.normal_solve(&rhs, shift)
}

/// Wavelet-block solve: `Phi^T (Phi wbar - (mu beta / 2) wtilde)` with
/// `wtilde_j = clamp(2 (Phi wbar)_j / (2 sigma + beta mu), -1, 1)`.
pub fn wavelet_prox_step(
    wbar: &[f64],
    wavelet: &HaarWavelet,
    mu: f64,
    beta: f64,
    sigma: f64,
) -> Vec<f64> {
    let coeffs: Vec<f64> = wavelet
        .forward(wbar)
        .iter()
        .map(|&c| c - 0.5 * mu * beta * (2.0 * c / (2.0 * sigma + beta * mu)).clamp(-1.0, 1.0))
        .collect();
    wavelet.inverse(&coeffs)
}

/// `beta Phi^T clamp(Phi x / sigma, -1, 1)`.
pub fn l1_wavelet_smooth_grad(x: &[f64], wavelet: &HaarWavelet, sigma: f64, beta: f64) -> Vec<f64> {
    WaveletL1 {
        wavelet: *wavelet,
        beta,
        sigma,
    }
    .grad(x)
}

/// Improvement in SNR of `x` over the observation `b`, in dB:
/// `10 log10(|b - truth|^2 / |x - truth|^2)`. Zero at `x = b`; returns
/// `f64::INFINITY` when `x` equals the truth exactly.
pub fn isnr(x: &[f64], b: &[f64], truth: &[f64]) -> f64 {
    let num = crate::linalg::dist_sq(b, truth);
    let den = crate::linalg::dist_sq(x, truth);
    if den == 0.0 {
        return f64::INFINITY;
    }
    10.0 * (num / den).log10()
}

/// Observation, operators and the three wired oracles `(f_1, f_2, f_3)`.
pub struct DeblurProblem {
    pub b: Image,
    pub blur: Arc<BlurOperator>,
    pub wavelet: HaarWavelet,
    pub params: DeblurParams,
    pub problem: SplitProblem,
}

impl std::fmt::Debug for DeblurProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeblurProblem")
            .field("shape", &(self.b.height(), self.b.width()))
            .field("params", &self.params)
            .finish()
    }
}

impl DeblurProblem {
    /// Smoothed objective `f_1^delta + f_2^sigma + f_3`.
    pub fn objective(&self, x: &[f64]) -> f64 {
        self.problem.value(x)
    }

    /// Original objective `alpha TV + beta |Phi x|_1 + |Ax - b|^2 / 2`.
    pub fn objective_nonsmooth(&self, x: &[f64]) -> f64 {
        let tv = SmoothedTv {
            height: self.b.height(),
            width: self.b.width(),
            alpha: self.params.alpha,
            delta: self.params.delta,
        }
        .tv(x);
        let l1: f64 = self.wavelet.forward(x).iter().map(|c| c.abs()).sum();
        let fit = 0.5 * crate::linalg::dist_sq(&self.blur.apply(x), self.b.data());
        self.params.alpha * tv + self.params.beta * l1 + fit
    }
}

fn check_params(params: &DeblurParams) -> Result<()> {
    let positive = [
        ("alpha", params.alpha),
        ("beta", params.beta),
        ("delta", params.delta),
        ("sigma", params.sigma),
        ("mu", params.mu),
    ];
    for (name, v) in positive {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    if !(params.noise_sd.is_finite() && params.noise_sd >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise_sd must be nonnegative, got {}",
            params.noise_sd
        )));
    }
    Ok(())
}

/// Blurs `truth`, adds seeded Gaussian noise and wires up the three oracles.
pub fn make_problem(truth: &Image, params: &DeblurParams) -> Result<DeblurProblem> {
    check_params(params)?;
    let (h, w) = (truth.height(), truth.width());
    let wavelet = HaarWavelet::new(h, w, params.levels)?;
    let blur = Arc::new(BlurOperator::uniform(h, w, params.blur_size)?);

    let mut b = blur.apply(truth.data());
    if params.noise_sd > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let normal = Normal::new(0.0, params.noise_sd).expect("finite noise level");
        b.iter_mut().for_each(|v| *v += normal.sample(&mut rng));
    }

    let functions: Vec<Box<dyn ProxFunction>> = vec![
        Box::new(TvTerm {
            smoothed: SmoothedTv {
                height: h,
                width: w,
                alpha: params.alpha,
                delta: params.delta,
            },
            inner_iters: params.inner_iters,
        }),
        Box::new(WaveletL1 {
            wavelet,
            beta: params.beta,
            sigma: params.sigma,
        }),
        Box::new(DataFidelity::new(blur.clone(), b.clone())),
    ];
    Ok(DeblurProblem {
        b: Image::new(h, w, b)?,
        blur,
        wavelet,
        params: params.clone(),
        problem: SplitProblem::new(functions)?,
    })
}

/// One splitting iteration on the deblurring problem with uniform mixing.
pub fn deblur_step(
    state: &RunState,
    problem: &DeblurProblem,
    algorithm: Algorithm,
) -> Result<RunState> {
    let mu = problem.params.mu;
    let d = MixingMatrix::uniform(3);
    match algorithm {
        Algorithm::Msa => msa_step(state, &d, mu, &problem.problem),
        Algorithm::Famsa => famsa_step(state, &d, mu, &problem.problem),
        Algorithm::FamsaS => famsas_step(state, mu, &problem.problem),
        other => Err(Error::InvalidParameter(format!(
            "{other} is not a splitting scheme"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeblurRow {
    pub k: usize,
    pub f_min: f64,
    pub f_sum: f64,
    pub isnr: f64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct DeblurRun {
    pub b: Image,
    pub rows: Vec<DeblurRow>,
    pub status: RunStatus,
    /// Best block of the last finite iteration.
    pub restored: Image,
}

/// Runs `algorithm` for `iters` iterations from the zero image, tracking ISNR.
/// Gradient baselines use `tau = mu / 2`.
pub fn run_deblur(
    truth: &Image,
    params: &DeblurParams,
    algorithm: Algorithm,
    iters: usize,
) -> Result<DeblurRun> {
    let dp = make_problem(truth, params)?;
    let config = RunConfig {
        algorithm,
        step: StepSize::Mu(params.mu),
        mixing: MixingChoice::Uniform,
        max_iter: iters,
        tol: 0.0,
        reference: None,
    };
    let x0 = vec![0.0; truth.len()];
    let mut rows = Vec::with_capacity(iters + 1);
    let b = dp.b.data();
    let outcome = run_observed(&dp.problem, &config, &x0, |row, x| {
        rows.push(DeblurRow {
            k: row.k,
            f_min: row.f_min,
            f_sum: row.f_sum,
            isnr: isnr(x, b, truth.data()),
            elapsed_ms: row.elapsed_ms,
        });
    })?;
    Ok(DeblurRun {
        restored: dp.b.with_data(outcome.best),
        b: dp.b,
        rows,
        status: outcome.status,
    })
}
