use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use multisplit::deblur::{phantom, run_deblur, DeblurParams, Image};
use multisplit::fermat_weber::{
    fw_experiment, fw_objective, fw_reference, gen_instance, FwExperimentConfig, FwInstance,
};
use multisplit::{run, Algorithm, MixingChoice, Reference, RunConfig, RunStatus, StepSize};

use crate::args::{GenArgs, MixingArg, ProblemKind, RunArgs, Table1Args};
use crate::output::{emit_plot_data, trace_csv, write_atomic, TraceRow};

/// How a command finished when it did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finish {
    Done,
    Diverged,
}

pub const SUMMARY_HEADER: &str = "algo,iter,relerr,time_s,status";

/// The `(n, K)` cells of the Fermat-Weber comparison, swept for every `tau`.
pub const TABLE1_GRID: [(usize, usize); 12] = [
    (50, 50),
    (50, 100),
    (50, 200),
    (100, 100),
    (100, 200),
    (100, 400),
    (200, 200),
    (200, 400),
    (200, 800),
    (300, 300),
    (300, 600),
    (300, 1200),
];

const TABLE1_ALGOS: [Algorithm; 4] = [
    Algorithm::Msa,
    Algorithm::FamsaS,
    Algorithm::Grad,
    Algorithm::Nest,
];

fn status_label(status: RunStatus) -> String {
    match status {
        RunStatus::Converged => "converged".into(),
        RunStatus::MaxIter => "max_iter".into(),
        RunStatus::Diverged { k } => format!("diverged@{k}"),
    }
}

fn finish(status: RunStatus) -> Finish {
    match status {
        RunStatus::Diverged { .. } => Finish::Diverged,
        _ => Finish::Done,
    }
}

pub fn run_command(args: &RunArgs) -> Result<Finish> {
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;
    match args.problem {
        ProblemKind::FermatWeber => run_fermat_weber(args),
        ProblemKind::Deblur => run_deblurring(args),
    }
}

fn load_instance(path: &Path) -> Result<FwInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FwInstance::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_fermat_weber(args: &RunArgs) -> Result<Finish> {
    let instance = match &args.instance {
        Some(path) => load_instance(path)?,
        None => gen_instance(args.n as usize, args.k as usize, args.seed),
    };
    if instance.k() < 2 {
        bail!("a Fermat-Weber run needs at least two points");
    }
    let reference = fw_reference(&instance)?;
    let problem = instance.smoothed_problem(args.rho)?;
    let inst = Arc::new(instance);
    let objective_inst = inst.clone();
    let config = RunConfig {
        algorithm: args.algo.into(),
        step: match (args.tau, args.mu) {
            (Some(tau), _) => StepSize::Tau(tau),
            (None, Some(mu)) => StepSize::Mu(mu),
            (None, None) => unreachable!("clap requires one of --tau, --mu"),
        },
        mixing: match args.mixing {
            MixingArg::Uniform => MixingChoice::Uniform,
            MixingArg::Identity => MixingChoice::Identity,
        },
        max_iter: args.max_iter,
        tol: args.tol,
        reference: Some(Reference {
            f_star: reference.f_star,
            objective: Some(Arc::new(move |x: &[f64]| fw_objective(x, &objective_inst))),
        }),
    };
    let outcome = run(&problem, &config, &inst.centroid())?;
    let rows: Vec<TraceRow> = outcome
        .record
        .rows()
        .iter()
        .map(|r| TraceRow {
            iter: r.k,
            obj_min: r.f_min,
            obj_sum: r.f_sum,
            relerr: r.relerr,
            elapsed_ms: r.elapsed_ms,
            isnr: None,
        })
        .collect();
    let out = &args.out;
    write_atomic(&out.join("trace.csv"), trace_csv(&rows, false).as_bytes())?;
    emit_plot_data(&rows, &out.join("obj.dat"), None)?;

    let last = rows.last().expect("trace has an initial row");
    let summary = format!(
        "{SUMMARY_HEADER}\n{},{},{},{:.3},{}\n",
        config.algorithm,
        last.iter,
        last.relerr.map(|e| format!("{e:.2e}")).unwrap_or_default(),
        last.elapsed_ms / 1e3,
        status_label(outcome.status)
    );
    write_atomic(&out.join("summary.csv"), summary.as_bytes())?;
    print!("{summary}");
    Ok(finish(outcome.status))
}

fn load_image(path: &Path) -> Result<Image> {
    let is_pgm = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    let image = if is_pgm {
        let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        Image::read_pgm(std::io::BufReader::new(f))
    } else {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Image::from_text(&text)
    };
    image.with_context(|| format!("parsing {}", path.display()))
}

fn pgm_bytes(image: &Image) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    image.write_pgm(&mut buf)?;
    Ok(buf)
}

fn run_deblurring(args: &RunArgs) -> Result<Finish> {
    if args.mixing != MixingArg::Uniform {
        bail!("deblur runs use uniform mixing");
    }
    let truth = match &args.image {
        Some(path) => load_image(path)?,
        None => {
            if !args.size.is_power_of_two() || args.size < 2 {
                bail!("--size must be a power of two >= 2, got {}", args.size);
            }
            phantom(args.size)
        }
    };
    let mu = match (args.tau, args.mu) {
        // Three functions: mu = tau (K - 1) = 2 tau.
        (Some(tau), _) => 2.0 * tau,
        (None, Some(mu)) => mu,
        (None, None) => unreachable!("clap requires one of --tau, --mu"),
    };
    let params = DeblurParams {
        alpha: args.alpha,
        beta: args.beta,
        delta: args.delta,
        sigma: args.sigma,
        mu,
        noise_sd: args.noise_sd,
        seed: args.seed,
        inner_iters: args.inner_iters as usize,
        levels: args.levels as usize,
        ..Default::default()
    };
    let algorithm: Algorithm = args.algo.into();
    let result = run_deblur(&truth, &params, algorithm, args.max_iter)?;
    let rows: Vec<TraceRow> = result
        .rows
        .iter()
        .map(|r| TraceRow {
            iter: r.k,
            obj_min: r.f_min,
            obj_sum: r.f_sum,
            relerr: None,
            elapsed_ms: r.elapsed_ms,
            isnr: Some(r.isnr),
        })
        .collect();
    let out = &args.out;
    write_atomic(&out.join("trace.csv"), trace_csv(&rows, true).as_bytes())?;
    emit_plot_data(&rows, &out.join("obj.dat"), Some(&out.join("isnr.dat")))?;
    write_atomic(&out.join("restored.pgm"), &pgm_bytes(&result.restored)?)?;
    write_atomic(
        &out.join("restored.txt"),
        result.restored.to_text().as_bytes(),
    )?;
    write_atomic(&out.join("observed.pgm"), &pgm_bytes(&result.b)?)?;

    let last = rows.last().expect("trace has an initial row");
    let summary = format!(
        "{SUMMARY_HEADER},isnr\n{algorithm},{},,{:.3},{},{:.4}\n",
        last.iter,
        last.elapsed_ms / 1e3,
        status_label(result.status),
        last.isnr.unwrap_or(f64::NAN)
    );
    write_atomic(&out.join("summary.csv"), summary.as_bytes())?;
    print!("{summary}");
    Ok(finish(result.status))
}

pub fn table1_command(args: &Table1Args) -> Result<Finish> {
    let mut csv = String::from("tau,n,k,ref_time_s");
    for a in TABLE1_ALGOS {
        let _ = write!(csv, ",{a}_iter,{a}_relerr,{a}_time_s,{a}_status");
    }
    csv.push('\n');
    let mut diverged = false;
    for &tau in &args.taus {
        for &(n, k) in TABLE1_GRID
            .iter()
            .filter(|(n, k)| *n <= args.max_n && *k <= args.max_k)
        {
            let config = FwExperimentConfig {
                n,
                k,
                tau,
                rho: args.rho,
                tol: args.tol,
                seed: args.seed,
                max_iter: args.max_iter,
                algorithms: TABLE1_ALGOS.to_vec(),
            };
            let table = fw_experiment(&config)?;
            let _ = write!(csv, "{tau},{n},{k},{:.3}", table.reference_s);
            let mut progress = format!("tau={tau} n={n} K={k}:");
            for row in &table.rows {
                diverged |= matches!(row.status, RunStatus::Diverged { .. });
                let _ = write!(
                    csv,
                    ",{},{:.1e},{:.3},{}",
                    row.iter,
                    row.relerr,
                    row.time_s,
                    status_label(row.status)
                );
                let _ = write!(progress, " {} {}", row.algorithm, row.iter);
            }
            csv.push('\n');
            eprintln!("{progress}");
        }
    }
    write_atomic(&args.out, csv.as_bytes())?;
    Ok(if diverged {
        Finish::Diverged
    } else {
        Finish::Done
    })
}

pub fn gen_instance_command(args: &GenArgs) -> Result<Finish> {
    let text = gen_instance(args.n as usize, args.k as usize, args.seed).to_text();
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(Finish::Done)
}
