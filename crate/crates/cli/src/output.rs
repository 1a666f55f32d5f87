use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const TRACE_HEADER: &str = "iter,obj_min,obj_sum,relerr,elapsed_ms";

/// One trace line. `relerr` and `isnr` are left empty when absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub obj_min: f64,
    pub obj_sum: f64,
    pub relerr: Option<f64>,
    pub elapsed_ms: f64,
    pub isnr: Option<f64>,
}

/// Shortest round-trip text, switching to exponent form outside `[1e-5, 1e16)`.
pub fn real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(real).unwrap_or_default()
}

/// Trace CSV. Reals use the shortest round-trip representation so that every
/// column except `elapsed_ms` is reproducible byte for byte.
pub fn trace_csv(rows: &[TraceRow], with_isnr: bool) -> String {
    let mut s = String::from(TRACE_HEADER);
    if with_isnr {
        s.push_str(",isnr");
    }
    s.push('\n');
    for r in rows {
        let _ = write!(
            s,
            "{},{},{},{},{:.3}",
            r.iter,
            real(r.obj_min),
            real(r.obj_sum),
            opt(r.relerr),
            r.elapsed_ms
        );
        if with_isnr {
            let _ = write!(s, ",{}", opt(r.isnr));
        }
        s.push('\n');
    }
    s
}

/// Two-column `iter value` lines for plotting.
pub fn plot_data(points: &[(usize, f64)]) -> Result<String> {
    if points.is_empty() {
        bail!("cannot write plot data for an empty trace");
    }
    let mut s = String::new();
    for (k, v) in points {
        let _ = writeln!(s, "{k} {}", real(*v));
    }
    Ok(s)
}

/// Writes `(iter, obj_min)` and, when present, `(iter, isnr)` files.
pub fn emit_plot_data(rows: &[TraceRow], obj_path: &Path, isnr_path: Option<&Path>) -> Result<()> {
    let obj: Vec<(usize, f64)> = rows.iter().map(|r| (r.iter, r.obj_min)).collect();
    write_atomic(obj_path, plot_data(&obj)?.as_bytes())?;
    if let Some(path) = isnr_path {
        let isnr: Vec<(usize, f64)> = rows
            .iter()
            .filter_map(|r| r.isnr.map(|v| (r.iter, v)))
            .collect();
        write_atomic(path, plot_data(&isnr)?.as_bytes())?;
    }
    Ok(())
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(e).with_context(|| format!("writing {}", path.display()));
    }
    Ok(())
}
