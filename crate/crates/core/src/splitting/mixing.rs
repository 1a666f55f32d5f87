use crate::error::{Error, Result};

const STOCHASTIC_TOL: f64 = 1e-12;

/// Nonnegative `K x K` matrix whose rows and columns all sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    k: usize,
    entries: Vec<f64>,
}

impl MixingMatrix {
    /// Builds a mixing matrix from row-major entries, checking double stochasticity.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidMixing("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidMixing(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        if let Some(bad) = entries.iter().find(|&&e| !e.is_finite() || e < 0.0) {
            return Err(Error::InvalidMixing(format!(
                "entry {bad} is negative or not finite"
            )));
        }
        for i in 0..k {
            let row: f64 = (0..k).map(|j| entries[i * k + j]).sum();
            let col: f64 = (0..k).map(|j| entries[j * k + i]).sum();
            if (row - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidMixing(format!("row {i} sums to {row}")));
            }
            if (col - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidMixing(format!("column {i} sums to {col}")));
            }
        }
        Ok(Self { k, entries })
    }

    /// `(1/K) e e^T`: every block is replaced by the mean.
    pub fn uniform(k: usize) -> Self {
        Self {
            k,
            entries: vec![1.0 / k as f64; k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut entries = vec![0.0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1.0;
        }
        Self { k, entries }
    }

    /// Permutation matrix sending block `i` to output position `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let k = perm.len();
        let mut rows = vec![vec![0.0; k]; k];
        for (i, &j) in perm.iter().enumerate() {
            if j >= k {
                return Err(Error::InvalidMixing(format!("index {j} out of range")));
            }
            rows[i][j] = 1.0;
        }
        Self::new(rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.k + j]
    }

    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.k as f64;
        self.entries.iter().all(|&e| e == u)
    }
}

/// Right-multiplies the block row `(x^1, ..., x^K)` by `d`:
/// output `j` is `sum_i d[i][j] * blocks[i]`.
pub fn mix(blocks: &[Vec<f64>], d: &MixingMatrix) -> Result<Vec<Vec<f64>>> {
    if blocks.len() != d.k() {
        return Err(Error::DimensionMismatch {
            expected: d.k(),
            got: blocks.len(),
        });
    }
    let n = blocks[0].len();
    if let Some(b) = blocks.iter().find(|b| b.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if d.is_uniform() {
        // Every output column is the same combination; compute it once.
        let c = d.get(0, 0);
        let mut o = vec![0.0; n];
        for b in blocks {
            crate::linalg::axpy(c, b, &mut o);
        }
        return Ok(vec![o; d.k()]);
    }
    let out = (0..d.k())
        .map(|j| {
            let mut o = vec![0.0; n];
            for (i, b) in blocks.iter().enumerate() {
                let c = d.get(i, j);
                if c != 0.0 {
                    crate::linalg::axpy(c, b, &mut o);
                }
            }
            o
        })
        .collect();
    Ok(out)
}
