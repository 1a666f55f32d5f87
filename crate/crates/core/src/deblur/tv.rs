//! Isotropic total variation on forward differences. The difference across
//! the last row (column) is taken as zero.

use super::image::Image;
use crate::splitting::SmoothFunction;

/// Chambolle's dual step; the fixed-point scheme is stable for steps up to 1/4.
const DUAL_STEP: f64 = 0.25;

/// Forward differences `(x[i+1,j] - x[i,j], x[i,j+1] - x[i,j])`.
pub(crate) fn gradient(x: &[f64], h: usize, w: usize) -> (Vec<f64>, Vec<f64>) {
    let mut dv = vec![0.0; h * w];
    let mut dh = vec![0.0; h * w];
    for i in 0..h {
        for j in 0..w {
            let p = i * w + j;
            if i + 1 < h {
                dv[p] = x[p + w] - x[p];
            }
            if j + 1 < w {
                dh[p] = x[p + 1] - x[p];
            }
        }
    }
    (dv, dh)
}

/// Discrete divergence, the negative adjoint of [`gradient`].
pub(crate) fn divergence(pv: &[f64], ph: &[f64], h: usize, w: usize) -> Vec<f64> {
    let mut out = vec![0.0; h * w];
    for i in 0..h {
        for j in 0..w {
            let p = i * w + j;
            let mut d = 0.0;
            if i + 1 < h {
                d += pv[p];
            }
            if i > 0 {
                d -= pv[p - w];
            }
            if j + 1 < w {
                d += ph[p];
            }
            if j > 0 {
                d -= ph[p - 1];
            }
            out[p] = d;
        }
    }
    out
}

fn tv_slice(x: &[f64], h: usize, w: usize) -> f64 {
    let (dv, dh) = gradient(x, h, w);
    dv.iter().zip(&dh).map(|(a, b)| a.hypot(*b)).sum()
}

/// `sum_ij sqrt((x[i+1,j] - x[i,j])^2 + (x[i,j] - x[i,j+1])^2)`.
pub fn tv_value(x: &Image) -> f64 {
    tv_slice(x.data(), x.height(), x.width())
}

/// `alpha * sum_ij sqrt(|grad x|_ij^2 + delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedTv {
    pub height: usize,
    pub width: usize,
    pub alpha: f64,
    pub delta: f64,
}

impl SmoothedTv {
    /// Unweighted TV of `x`, used for the nonsmooth objective and prox.
    pub fn tv(&self, x: &[f64]) -> f64 {
        tv_slice(x, self.height, self.width)
    }
}

impl SmoothFunction for SmoothedTv {
    fn dim(&self) -> usize {
        self.height * self.width
    }

    fn value(&self, x: &[f64]) -> f64 {
        let (dv, dh) = gradient(x, self.height, self.width);
        self.alpha
            * dv.iter()
                .zip(&dh)
                .map(|(a, b)| (a * a + b * b + self.delta).sqrt())
                .sum::<f64>()
    }

    fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        let (mut dv, mut dh) = gradient(x, self.height, self.width);
        for (a, b) in dv.iter_mut().zip(dh.iter_mut()) {
            let s = (*a * *a + *b * *b + self.delta).sqrt();
            *a /= s;
            *b /= s;
        }
        let div = divergence(&dv, &dh, self.height, self.width);
        for (o, d) in out.iter_mut().zip(div) {
            *o = -self.alpha * d;
        }
    }

    /// `alpha |grad|^2 / sqrt(delta)` with `|grad|^2 <= 8`.
    fn lipschitz(&self) -> f64 {
        8.0 * self.alpha / self.delta.sqrt()
    }
}

/// Approximate minimizer of `weight * TV(x) + |x - g|^2 / 2` by
/// `inner_iters` steps of Chambolle's dual projection iteration.
///
/// The result never has a larger objective than `g` itself: if the truncated
/// iteration has not yet improved on it, `g` is returned.
pub fn chambolle_tv_denoise(g: &Image, weight: f64, inner_iters: usize) -> Image {
    let data = chambolle_slice(g.data(), g.height(), g.width(), weight, inner_iters);
    g.with_data(data)
}

pub(crate) fn chambolle_slice(
    g: &[f64],
    h: usize,
    w: usize,
    weight: f64,
    inner_iters: usize,
) -> Vec<f64> {
    if weight <= 0.0 || inner_iters == 0 {
        return g.to_vec();
    }
    let n = h * w;
    let mut pv = vec![0.0; n];
    let mut ph = vec![0.0; n];
    let inv_weight = 1.0 / weight;
    for _ in 0..inner_iters {
        let div = divergence(&pv, &ph, h, w);
        let u: Vec<f64> = div
            .iter()
            .zip(g)
            .map(|(d, gi)| d - gi * inv_weight)
            .collect();
        let (gv, gh) = gradient(&u, h, w);
        for p in 0..n {
            let denom = 1.0 + DUAL_STEP * gv[p].hypot(gh[p]);
            pv[p] = (pv[p] + DUAL_STEP * gv[p]) / denom;
            ph[p] = (ph[p] + DUAL_STEP * gh[p]) / denom;
        }
    }
    let div = divergence(&pv, &ph, h, w);
    let x: Vec<f64> = g.iter().zip(&div).map(|(gi, d)| gi - weight * d).collect();

    let objective = |v: &[f64]| weight * tv_slice(v, h, w) + 0.5 * crate::linalg::dist_sq(v, g);
    if objective(&x) <= objective(g) {
        x
    } else {
        g.to_vec()
    }
}
