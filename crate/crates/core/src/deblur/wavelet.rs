use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Orthonormal multilevel 2D Haar transform (Mallat layout, coefficients
/// stored in place of the pixels). Orthonormality makes the inverse equal
/// to the transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarWavelet {
    height: usize,
    width: usize,
    levels: usize,
}

impl HaarWavelet {
    pub fn new(height: usize, width: usize, levels: usize) -> Result<Self> {
        if !height.is_power_of_two() || !width.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { height, width });
        }
        let max_levels = height.min(width).trailing_zeros() as usize;
        if levels == 0 || levels > max_levels {
            return Err(Error::InvalidParameter(format!(
                "wavelet levels must be in 1..={max_levels}, got {levels}"
            )));
        }
        Ok(Self {
            height,
            width,
            levels,
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.height * self.width);
        let mut out = x.to_vec();
        let mut scratch = vec![0.0; self.height.max(self.width)];
        let (mut h, mut w) = (self.height, self.width);
        for _ in 0..self.levels {
            for r in 0..h {
                let row = &mut out[r * self.width..r * self.width + w];
                analyze(row, &mut scratch[..w]);
            }
            for c in 0..w {
                let mut col: Vec<f64> = (0..h).map(|r| out[r * self.width + c]).collect();
                analyze(&mut col, &mut scratch[..h]);
                for (r, v) in col.into_iter().enumerate() {
                    out[r * self.width + c] = v;
                }
            }
            h /= 2;
            w /= 2;
        }
        out
    }

    pub fn inverse(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.height * self.width);
        let mut out = coeffs.to_vec();
        let mut scratch = vec![0.0; self.height.max(self.width)];
        for level in (0..self.levels).rev() {
            let (h, w) = (self.height >> level, self.width >> level);
            for c in 0..w {
                let mut col: Vec<f64> = (0..h).map(|r| out[r * self.width + c]).collect();
                synthesize(&mut col, &mut scratch[..h]);
                for (r, v) in col.into_iter().enumerate() {
                    out[r * self.width + c] = v;
                }
            }
            for r in 0..h {
                let row = &mut out[r * self.width..r * self.width + w];
                synthesize(row, &mut scratch[..w]);
            }
        }
        out
    }
}

// [a0 a1 a2 a3 ...] -> [(a0+a1)/√2, (a2+a3)/√2, ... | (a0-a1)/√2, ...]
fn analyze(v: &mut [f64], scratch: &mut [f64]) {
    let half = v.len() / 2;
    for i in 0..half {
        let (a, b) = (v[2 * i], v[2 * i + 1]);
        scratch[i] = (a + b) * FRAC_1_SQRT_2;
        scratch[half + i] = (a - b) * FRAC_1_SQRT_2;
    }
    v.copy_from_slice(&scratch[..v.len()]);
}

fn synthesize(v: &mut [f64], scratch: &mut [f64]) {
    let half = v.len() / 2;
    for i in 0..half {
        let (s, d) = (v[i], v[half + i]);
        scratch[2 * i] = (s + d) * FRAC_1_SQRT_2;
        scratch[2 * i + 1] = (s - d) * FRAC_1_SQRT_2;
    }
    v.copy_from_slice(&scratch[..v.len()]);
}
