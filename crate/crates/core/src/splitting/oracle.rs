use crate::error::{Error, Result};

/// A convex function with a Lipschitz continuous gradient.
pub trait SmoothFunction: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Writes the gradient at `x` into `out`.
    fn grad_into(&self, x: &[f64], out: &mut [f64]);

    /// Lipschitz constant of the gradient.
    fn lipschitz(&self) -> f64;

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.grad_into(x, &mut out);
        out
    }
}

/// A smooth function that also exposes its proximal map
/// `prox(lambda, y) = argmin_u f(u) + |u - y|^2 / (2 lambda)`.
pub trait ProxFunction: SmoothFunction {
    fn prox(&self, lambda: f64, y: &[f64]) -> Vec<f64>;
}

/// `F(x) = sum_i f_i(x)` over a common space, with at least two terms.
pub struct SplitProblem {
    functions: Vec<Box<dyn ProxFunction>>,
    dim: usize,
}

impl std::fmt::Debug for SplitProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplitProblem")
            .field("k", &self.functions.len())
            .field("dim", &self.dim)
            .finish()
    }
}

impl SplitProblem {
    pub fn new(functions: Vec<Box<dyn ProxFunction>>) -> Result<Self> {
        if functions.len() < 2 {
            return Err(Error::InvalidProblem(format!(
                "need at least two functions, got {}",
                functions.len()
            )));
        }
        let dim = functions[0].dim();
        if dim == 0 {
            return Err(Error::InvalidProblem("dimension must be positive".into()));
        }
        for f in &functions[1..] {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        Ok(Self { functions, dim })
    }

    /// Number of functions `K`.
    pub fn k(&self) -> usize {
        self.functions.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn functions(&self) -> &[Box<dyn ProxFunction>] {
        &self.functions
    }

    pub fn function(&self, i: usize) -> &dyn ProxFunction {
        self.functions[i].as_ref()
    }

    /// `F(x)`, summed in function order.
    pub fn value(&self, x: &[f64]) -> f64 {
        self.functions.iter().map(|f| f.value(x)).sum()
    }

    /// All `K` gradients at `x`.
    pub fn grads(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.functions.iter().map(|f| f.grad(x)).collect()
    }

    /// `grad F(x)`, summed in function order.
    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut total = vec![0.0; self.dim];
        let mut g = vec![0.0; self.dim];
        for f in &self.functions {
            f.grad_into(x, &mut g);
            crate::linalg::axpy(1.0, &g, &mut total);
        }
        total
    }

    pub fn max_lipschitz(&self) -> f64 {
        self.functions
            .iter()
            .map(|f| f.lipschitz())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }
}
