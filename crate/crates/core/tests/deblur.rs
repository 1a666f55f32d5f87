mod common;

use common::*;
use multisplit::deblur::{
    chambolle_tv_denoise, data_solve, deblur_step, isnr, make_problem, phantom, run_deblur,
    wavelet_prox_step, DeblurParams, HaarWavelet, Image, SmoothedTv, WaveletL1,
};
use multisplit::{Algorithm, RunState, SmoothFunction};

fn small_params(mu: f64) -> DeblurParams {
    DeblurParams {
        mu,
        levels: 3,
        ..Default::default()
    }
}

/// One MSA iteration on the deblurring problem, written out block by block.
fn msa_by_hand(w: &[f64], truth: &Image, params: &DeblurParams) -> Vec<Vec<f64>> {
    let dp = make_problem(truth, params).unwrap();
    let (h, wd) = (truth.height(), truth.width());
    let mu = params.mu;
    let tv = SmoothedTv {
        height: h,
        width: wd,
        alpha: params.alpha,
        delta: params.delta,
    };
    let wl = WaveletL1 {
        wavelet: dp.wavelet,
        beta: params.beta,
        sigma: params.sigma,
    };
    let g1 = tv.grad(w);
    let g2 = wl.grad(w);
    let r = dp.blur.apply(w);
    let resid: Vec<f64> = r.iter().zip(dp.b.data()).map(|(a, b)| a - b).collect();
    let g3 = dp.blur.adjoint(&resid);

    let g: Vec<f64> = (0..w.len())
        .map(|p| w[p] - mu * (g2[p] + g3[p]) / 2.0)
        .collect();
    let x = chambolle_tv_denoise(
        &Image::new(h, wd, g).unwrap(),
        params.alpha * mu / 2.0,
        params.inner_iters,
    );
    let wbar: Vec<f64> = (0..w.len())
        .map(|p| w[p] - mu * (g1[p] + g3[p]) / 2.0)
        .collect();
    let y = wavelet_prox_step(&wbar, &dp.wavelet, mu, params.beta, params.sigma);
    let z = data_solve(w, &g1, &g2, &dp.blur, dp.b.data(), mu);
    vec![x.into_vec(), y, z]
}

#[test]
fn engine_matches_hand_written_iteration() {
    let truth = phantom(16);
    for mu in [0.5, 1.0, 5.0] {
        let params = small_params(mu);
        let dp = make_problem(&truth, &params).unwrap();
        let mut rng = rng(11);
        let w = uniform_vec(&mut rng, 256, 0.0, 255.0);
        let state = RunState::new(3, &w);
        let next = deblur_step(&state, &dp, Algorithm::Msa).unwrap();
        let expected = msa_by_hand(&w, &truth, &params);
        for (got, want) in next.x.iter().zip(&expected) {
            assert!(max_abs_diff(got, want) < 1e-9, "mu = {mu}");
        }
        let mean: Vec<f64> = (0..256)
            .map(|p| expected.iter().map(|b| b[p]).sum::<f64>() / 3.0)
            .collect();
        assert!(max_abs_diff(&next.w[0], &mean) < 1e-9);
    }
}

#[test]
fn wavelet_prox_survives_perturbations() {
    let wavelet = HaarWavelet::new(8, 8, 3).unwrap();
    let mut rng = rng(12);
    for _ in 0..50 {
        let mu = log_uniform(&mut rng, 0.1, 10.0);
        let sigma = log_uniform(&mut rng, 1e-4, 1.0);
        let beta = log_uniform(&mut rng, 1e-3, 1.0);
        let wbar = uniform_vec(&mut rng, 64, -1.0, 1.0);
        let f2 = WaveletL1 {
            wavelet,
            beta,
            sigma,
        };
        let objective = |y: &[f64]| 0.5 * mu * f2.value(y) + 0.5 * dist(y, &wbar).powi(2);
        let y = wavelet_prox_step(&wbar, &wavelet, mu, beta, sigma);
        let base = objective(&y);
        for _ in 0..20 {
            let d = uniform_vec(&mut rng, 64, -1.0, 1.0);
            let nd = norm(&d);
            let probe: Vec<f64> = y.iter().zip(&d).map(|(a, b)| a + 1e-3 * b / nd).collect();
            assert!(base <= objective(&probe) + 1e-12);
        }
    }
}

#[test]
fn run_is_deterministic() {
    let truth = phantom(16);
    let params = small_params(1.0);
    for algo in [Algorithm::Msa, Algorithm::FamsaS, Algorithm::Grad] {
        let a = run_deblur(&truth, &params, algo, 15).unwrap();
        let b = run_deblur(&truth, &params, algo, 15).unwrap();
        assert_eq!(a.rows.len(), 16);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(
                (ra.k, ra.f_min, ra.f_sum, ra.isnr),
                (rb.k, rb.f_min, rb.f_sum, rb.isnr)
            );
        }
        assert_eq!(a.restored, b.restored);
    }
}

#[test]
fn first_row_is_the_zero_image() {
    let truth = phantom(16);
    let params = small_params(1.0);
    let run = run_deblur(&truth, &params, Algorithm::Famsa, 3).unwrap();
    let dp = make_problem(&truth, &params).unwrap();
    let zero = vec![0.0; 256];
    assert_eq!(run.rows[0].f_min, dp.objective(&zero));
    assert_eq!(run.rows[0].isnr, isnr(&zero, dp.b.data(), truth.data()));
}

#[test]
fn isnr_improves_as_reconstruction_approaches_truth() {
    let truth = phantom(16);
    let dp = make_problem(&truth, &small_params(1.0)).unwrap();
    let b = dp.b.data();
    let mut last = f64::NEG_INFINITY;
    for s in [0.0, 0.25, 0.5, 0.75, 0.99] {
        let x: Vec<f64> = b
            .iter()
            .zip(truth.data())
            .map(|(bi, ti)| bi + s * (ti - bi))
            .collect();
        let v = isnr(&x, b, truth.data());
        assert!(v > last);
        last = v;
    }
}

#[test]
fn image_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("multisplit-deblur-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let img = phantom(32);
    let pgm = dir.join("p.pgm");
    img.write_pgm(std::fs::File::create(&pgm).unwrap()).unwrap();
    let back = Image::read_pgm(std::fs::File::open(&pgm).unwrap()).unwrap();
    assert_eq!(back, img);
    let txt = dir.join("p.txt");
    let noisy = img.with_data(img.data().iter().map(|v| v + 0.123_456_789).collect());
    std::fs::write(&txt, noisy.to_text()).unwrap();
    assert_eq!(
        Image::from_text(&std::fs::read_to_string(&txt).unwrap()).unwrap(),
        noisy
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
