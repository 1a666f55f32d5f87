use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::smoothing::SmoothedNorm;
use crate::splitting::{ProxFunction, SplitProblem};

/// `K` anchor points in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FwInstance {
    n: usize,
    seed: u64,
    points: Vec<Vec<f64>>,
}

/// `K` points with i.i.d. `N(0, n)` entries (standard deviation `sqrt(n)`),
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn gen_instance(n: usize, k: usize, seed: u64) -> FwInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, (n as f64).sqrt()).expect("finite standard deviation");
    let points = (0..k)
        .map(|_| (0..n).map(|_| normal.sample(&mut rng)).collect())
        .collect();
    FwInstance { n, seed, points }
}

impl FwInstance {
    pub fn from_points(points: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(Error::InvalidProblem(
                "instance needs at least one nonempty point".into(),
            ));
        }
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidProblem("points must be finite".into()));
            }
        }
        Ok(Self { n, seed, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Mean of the points; the standard starting iterate.
    pub fn centroid(&self) -> Vec<f64> {
        crate::linalg::mean(&self.points)
    }

    /// The smoothed problem as `K` [`SmoothedNorm`] oracles.
    pub fn smoothed_problem(&self, rho: f64) -> Result<SplitProblem> {
        let functions = self
            .points
            .iter()
            .map(|c| {
                SmoothedNorm::new(c.clone(), rho).map(|f| Box::new(f) as Box<dyn ProxFunction>)
            })
            .collect::<Result<Vec<_>>>()?;
        SplitProblem::new(functions)
    }

    /// Plain-text form: a `n K seed` header, then one whitespace-separated row per point.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k(), self.seed);
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut header = |name: &str| -> Result<u64> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing header field {name}")))?
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("header field {name}: {e}")))
        };
        let n = header("n")? as usize;
        let k = header("K")? as usize;
        let seed = header("seed")?;
        let values = tokens
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("value '{t}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n * k {
            return Err(Error::Parse(format!(
                "expected {} values for n = {n}, K = {k}, found {}",
                n * k,
                values.len()
            )));
        }
        let points = values.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        Self::from_points(points, seed)
    }
}
