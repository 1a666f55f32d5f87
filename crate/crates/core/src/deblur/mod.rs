//! TV + wavelet image deblurring as a three-function split:
//!
//! ```text
//! min  alpha TV(x) + beta |Phi x|_1 + |A x - b|^2 / 2
//! ```
//!
//! `A` is a 9x9 uniform blur with periodic boundary and `Phi` an orthonormal
//! Haar transform. The TV and l1 terms are smoothed for linearization
//! (`sqrt(. + delta)` and Huber with parameter `sigma`). Each block
//! subproblem has a cheap solver: TV denoising by Chambolle's iteration on
//! the nonsmooth TV, a closed-form Huber shrinkage in the wavelet domain, and
//! a diagonal solve in the Fourier domain for the data term.

mod blur;
mod fft;
mod image;
mod problem;
mod tv;
mod wavelet;

pub use blur::BlurOperator;
pub use image::{phantom, Image};
pub use problem::{
    data_solve, deblur_step, isnr, l1_wavelet_smooth_grad, make_problem, run_deblur,
    wavelet_prox_step, DataFidelity, DeblurParams, DeblurProblem, DeblurRow, DeblurRun, TvTerm,
    WaveletL1,
};
pub use tv::{chambolle_tv_denoise, tv_value, SmoothedTv};
pub use wavelet::HaarWavelet;
