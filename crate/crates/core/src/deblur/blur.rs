use rustfft::num_complex::Complex64;

use super::fft::Fft2;
use crate::error::{Error, Result};

/// Uniform `size x size` box blur on a periodic grid, diagonalized by the 2D DFT.
#[derive(Clone)]
pub struct BlurOperator {
    height: usize,
    width: usize,
    size: usize,
    spectrum: Vec<Complex64>,
    fft: Fft2,
}

impl std::fmt::Debug for BlurOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlurOperator")
            .field("height", &self.height)
            .field("width", &self.width)
            .field("size", &self.size)
            .finish()
    }
}

impl BlurOperator {
    /// Box kernel with `size^2` equal taps of weight `1 / size^2`, centered on
    /// the pixel. `size` must be odd; `size = 1` is the identity.
    pub fn uniform(height: usize, width: usize, size: usize) -> Result<Self> {
        if size.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "kernel size {size} must be odd"
            )));
        }
        if height == 0 || width == 0 {
            return Err(Error::InvalidParameter("empty grid".into()));
        }
        let half = (size / 2) as isize;
        let weight = 1.0 / (size * size) as f64;
        let mut psf = vec![0.0; height * width];
        for di in -half..=half {
            for dj in -half..=half {
                let r = di.rem_euclid(height as isize) as usize;
                let c = dj.rem_euclid(width as isize) as usize;
                psf[r * width + c] += weight;
            }
        }
        let fft = Fft2::new(height, width);
        let spectrum = fft.forward_real(&psf);
        Ok(Self {
            height,
            width,
            size,
            spectrum,
            fft,
        })
    }

    pub fn identity(height: usize, width: usize) -> Result<Self> {
        Self::uniform(height, width, 1)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    /// `max |spectrum|^2 = |A|_2^2`, the Lipschitz constant of `grad |Ax - b|^2 / 2`.
    pub fn norm_sq(&self) -> f64 {
        self.spectrum
            .iter()
            .map(|s| s.norm_sqr())
            .fold(0.0, f64::max)
    }

    fn filter(&self, x: &[f64], f: impl Fn(Complex64) -> Complex64) -> Vec<f64> {
        let mut buf = self.fft.forward_real(x);
        for (v, s) in buf.iter_mut().zip(&self.spectrum) {
            *v *= f(*s);
        }
        self.fft.inverse_real(buf)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.filter(x, |s| s)
    }

    pub fn adjoint(&self, x: &[f64]) -> Vec<f64> {
        self.filter(x, |s| s.conj())
    }

    /// Solves `(A^T A + shift I) z = rhs` exactly in the frequency domain.
    pub fn normal_solve(&self, rhs: &[f64], shift: f64) -> Vec<f64> {
        self.filter(rhs, |s| Complex64::new(1.0 / (s.norm_sqr() + shift), 0.0))
    }
}
