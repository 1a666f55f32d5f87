//! Browser bindings for the demo page in `www/`.
//!
//! The `*_impl` functions hold the logic and return the library error type so
//! they can be tested natively; the exported wrappers only convert errors.

use multisplit::deblur::{phantom, run_deblur, DeblurParams};
use multisplit::fermat_weber::{fw_objective, fw_reference, FwInstance};
use multisplit::smoothing::huber;
use multisplit::{run_observed, Algorithm, Error, MixingChoice, Reference, RunConfig, StepSize};
use std::sync::Arc;
use wasm_bindgen::prelude::*;

fn to_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// A 2-D Fermat-Weber run: the best block per iteration and the objectives.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct FwDemo {
    path: Vec<f64>,
    objective: Vec<f64>,
    relerr: Vec<f64>,
    optimum: Vec<f64>,
    status: String,
}

#[wasm_bindgen]
impl FwDemo {
    /// Interleaved `x, y` of the best block at every recorded iteration.
    #[wasm_bindgen(getter)]
    pub fn path(&self) -> Vec<f64> {
        self.path.clone()
    }

    /// Unsmoothed objective along the path.
    #[wasm_bindgen(getter)]
    pub fn objective(&self) -> Vec<f64> {
        self.objective.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn relerr(&self) -> Vec<f64> {
        self.relerr.clone()
    }

    /// Reference optimum `x, y`.
    #[wasm_bindgen(getter)]
    pub fn optimum(&self) -> Vec<f64> {
        self.optimum.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn status(&self) -> String {
        self.status.clone()
    }
}

pub fn fermat_weber_impl(
    points: &[f64],
    algorithm: &str,
    tau: f64,
    rho: f64,
    iters: usize,
) -> Result<FwDemo, Error> {
    if !points.len().is_multiple_of(2) || points.len() < 4 {
        return Err(Error::InvalidParameter(
            "need at least two points as interleaved x, y".into(),
        ));
    }
    let algorithm: Algorithm = algorithm.parse()?;
    let instance = FwInstance::from_points(points.chunks(2).map(|p| p.to_vec()).collect(), 0)?;
    let reference = fw_reference(&instance)?;
    let problem = instance.smoothed_problem(rho)?;
    let inst = Arc::new(instance);
    let objective_inst = inst.clone();
    let config = RunConfig {
        algorithm,
        step: StepSize::Tau(tau),
        mixing: MixingChoice::Uniform,
        max_iter: iters,
        tol: 0.0,
        reference: Some(Reference {
            f_star: reference.f_star,
            objective: Some(Arc::new(move |x: &[f64]| fw_objective(x, &objective_inst))),
        }),
    };
    let mut path = Vec::with_capacity(2 * (iters + 1));
    let mut objective = Vec::with_capacity(iters + 1);
    let mut relerr = Vec::with_capacity(iters + 1);
    let outcome = run_observed(&problem, &config, &inst.centroid(), |row, x| {
        path.extend_from_slice(x);
        objective.push(fw_objective(x, &inst));
        relerr.push(row.relerr.unwrap_or(f64::NAN));
    })?;
    Ok(FwDemo {
        path,
        objective,
        relerr,
        optimum: reference.x_star,
        status: format!("{:?}", outcome.status),
    })
}

/// Runs `algorithm` ("MSA", "FaMSA", "FaMSA-s", "Grad", "Nest") on the
/// planar points `points = [x0, y0, x1, y1, ...]` from their centroid.
#[wasm_bindgen]
pub fn fermat_weber(
    points: &[f64],
    algorithm: &str,
    tau: f64,
    rho: f64,
    iters: usize,
) -> Result<FwDemo, JsError> {
    fermat_weber_impl(points, algorithm, tau, rho, iters).map_err(to_js)
}

/// Deblurring of the synthetic test image.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct DeblurDemo {
    size: usize,
    truth: Vec<f64>,
    observed: Vec<f64>,
    restored: Vec<f64>,
    objective: Vec<f64>,
    isnr: Vec<f64>,
    status: String,
}

#[wasm_bindgen]
impl DeblurDemo {
    #[wasm_bindgen(getter)]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major images on the 0..=255 scale.
    #[wasm_bindgen(getter)]
    pub fn truth(&self) -> Vec<f64> {
        self.truth.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn observed(&self) -> Vec<f64> {
        self.observed.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn restored(&self) -> Vec<f64> {
        self.restored.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn objective(&self) -> Vec<f64> {
        self.objective.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn isnr(&self) -> Vec<f64> {
        self.isnr.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn status(&self) -> String {
        self.status.clone()
    }
}

pub fn deblur_impl(
    size: usize,
    algorithm: &str,
    mu: f64,
    iters: usize,
    seed: u64,
) -> Result<DeblurDemo, Error> {
    if size < 16 || !size.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "image size must be a power of two >= 16, got {size}"
        )));
    }
    let algorithm: Algorithm = algorithm.parse()?;
    let truth = phantom(size);
    let params = DeblurParams {
        mu,
        seed,
        ..Default::default()
    };
    let run = run_deblur(&truth, &params, algorithm, iters)?;
    Ok(DeblurDemo {
        size,
        truth: truth.into_vec(),
        observed: run.b.into_vec(),
        restored: run.restored.into_vec(),
        objective: run.rows.iter().map(|r| r.f_min).collect(),
        isnr: run.rows.iter().map(|r| r.isnr).collect(),
        status: format!("{:?}", run.status),
    })
}

#[wasm_bindgen]
pub fn deblur(
    size: usize,
    algorithm: &str,
    mu: f64,
    iters: usize,
    seed: u32,
) -> Result<DeblurDemo, JsError> {
    deblur_impl(size, algorithm, mu, iters, seed.into()).map_err(to_js)
}

pub fn smoothing_curve_impl(rho: f64, half_width: f64, samples: usize) -> Result<Vec<f64>, Error> {
    if !(rho > 0.0 && rho.is_finite()) || !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidParameter(
            "rho and the half width must be positive".into(),
        ));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let s = -half_width + 2.0 * half_width * i as f64 / (samples - 1) as f64;
        out.extend([s, s.abs(), huber(s, rho)]);
    }
    Ok(out)
}

/// Samples `|s|` and its smoothed version on `[-half_width, half_width]`,
/// interleaved as `s, |s|, huber(s)`.
#[wasm_bindgen]
pub fn smoothing_curve(rho: f64, half_width: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    smoothing_curve_impl(rho, half_width, samples).map_err(to_js)
}
