use super::{fw_objective, FwInstance};
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, norm};

const MAX_ITER: usize = 200_000;
const COINCIDENT: f64 = 1e-14;

/// Geometric median of an instance, used as the ground-truth optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct FwReference {
    pub x_star: Vec<f64>,
    /// Nonsmooth objective at `x_star`.
    pub f_star: f64,
    /// Length of the final Weiszfeld step.
    pub last_step: f64,
    /// First-order residual at `x_star`: `|sum_i (x - c^i)/|x - c^i||`, or
    /// `max(0, |R| - m)` when `x_star` coincides with `m` of the points and
    /// `R` is the pull of the remaining ones.
    pub residual: f64,
    pub iterations: usize,
}

/// Weiszfeld's fixed-point iteration `x <- sum(c^i / r_i) / sum(1 / r_i)`,
/// started at the centroid, with the Vardi-Zhang modification when an
/// iterate lands on a data point. Stops when the step length drops to `tol`.
pub fn weiszfeld_reference(instance: &FwInstance, tol: f64) -> Result<FwReference> {
    let points = instance.points();
    let mut x = instance.centroid();

    let first = &points[0];
    if points.iter().all(|p| p == first) {
        return Ok(FwReference {
            x_star: first.clone(),
            f_star: 0.0,
            last_step: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }

    let mut last_step = f64::INFINITY;
    for it in 1..=MAX_ITER {
        let (next, at_point) = weiszfeld_map(points, &x);
        if at_point {
            // Already optimal at a data point; the map returns x itself.
            if next == x {
                return Ok(finish(instance, x, 0.0, it));
            }
        }
        last_step = dist(&next, &x);
        x = next;
        if last_step <= tol {
            // Weiszfeld only approaches an optimal data point; snap to it.
            if let Some(c) = optimal_nearby_point(points, &x, tol.sqrt()) {
                x = c;
            }
            return Ok(finish(instance, x, last_step, it));
        }
    }
    Err(Error::OracleFailure {
        iterations: MAX_ITER,
        last_step,
    })
}

/// One (modified) Weiszfeld update. The flag reports whether `x` coincides with
/// a data point.
fn weiszfeld_map(points: &[Vec<f64>], x: &[f64]) -> (Vec<f64>, bool) {
    let n = x.len();
    let mut num = vec![0.0; n];
    let mut den = 0.0;
    let mut pull = vec![0.0; n];
    let mut multiplicity = 0usize;
    for c in points {
        let r = dist(x, c);
        if r <= COINCIDENT {
            multiplicity += 1;
            continue;
        }
        axpy(1.0 / r, c, &mut num);
        den += 1.0 / r;
        for ((p, ci), xi) in pull.iter_mut().zip(c).zip(x) {
            *p += (ci - xi) / r;
        }
    }
    let t: Vec<f64> = num.iter().map(|v| v / den).collect();
    if multiplicity == 0 {
        return (t, false);
    }
    let r = norm(&pull);
    let eta = multiplicity as f64;
    if r <= eta {
        // Subgradient condition: 0 lies in the subdifferential at this point.
        return (x.to_vec(), true);
    }
    let w = eta / r;
    let next = t
        .iter()
        .zip(x)
        .map(|(ti, xi)| (1.0 - w) * ti + w * xi)
        .collect();
    (next, true)
}

fn optimal_nearby_point(points: &[Vec<f64>], x: &[f64], radius: f64) -> Option<Vec<f64>> {
    let nearest = points
        .iter()
        .min_by(|a, b| dist(a, x).total_cmp(&dist(b, x)))?;
    (dist(nearest, x) <= radius && optimality_residual(points, nearest) == 0.0)
        .then(|| nearest.clone())
}

fn finish(instance: &FwInstance, x: Vec<f64>, last_step: f64, iterations: usize) -> FwReference {
    let residual = optimality_residual(instance.points(), &x);
    FwReference {
        f_star: fw_objective(&x, instance),
        x_star: x,
        last_step,
        residual,
        iterations,
    }
}

pub(crate) fn optimality_residual(points: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut g = vec![0.0; x.len()];
    let mut multiplicity = 0usize;
    for c in points {
        let r = dist(x, c);
        if r <= COINCIDENT {
            multiplicity += 1;
            continue;
        }
        for ((gi, xi), ci) in g.iter_mut().zip(x).zip(c) {
            *gi += (xi - ci) / r;
        }
    }
    (norm(&g) - multiplicity as f64).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat_weber::gen_instance;

    #[test]
    fn identical_points() {
        let inst = FwInstance::from_points(vec![vec![2.0, -1.0]; 4], 0).unwrap();
        let r = weiszfeld_reference(&inst, 1e-12).unwrap();
        assert_eq!(r.x_star, vec![2.0, -1.0]);
        assert_eq!(r.f_star, 0.0);
    }

    #[test]
    fn equilateral_triangle_centroid() {
        let s = 3f64.sqrt();
        let pts = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, s]];
        let inst = FwInstance::from_points(pts, 0).unwrap();
        let r = weiszfeld_reference(&inst, 1e-13).unwrap();
        assert!((r.x_star[0] - 1.0).abs() < 1e-10);
        assert!((r.x_star[1] - s / 3.0).abs() < 1e-10);
    }

    #[test]
    fn square_corners_against_grid_search() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
        ];
        let inst = FwInstance::from_points(pts, 0).unwrap();
        let r = weiszfeld_reference(&inst, 1e-13).unwrap();
        // Dense grid search on [0, 2]^2.
        let m = 400;
        let mut best = (f64::INFINITY, 0.0, 0.0);
        for i in 0..=m {
            for j in 0..=m {
                let p = [2.0 * i as f64 / m as f64, 2.0 * j as f64 / m as f64];
                let f = fw_objective(&p, &inst);
                if f < best.0 {
                    best = (f, p[0], p[1]);
                }
            }
        }
        assert!((best.1 - 1.0).abs() < 1e-12 && (best.2 - 1.0).abs() < 1e-12);
        assert!((r.f_star - best.0).abs() < 1e-9);
        assert!((r.f_star - 4.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn optimum_at_data_point() {
        // A heavy cluster at the origin pins the median there.
        let pts = vec![
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ];
        let inst = FwInstance::from_points(pts, 0).unwrap();
        let r = weiszfeld_reference(&inst, 1e-13).unwrap();
        assert!(norm(&r.x_star) < 1e-10, "{:?}", r.x_star);
        assert!(r.residual <= 1e-6);
    }

    #[test]
    fn random_instance_residual() {
        let inst = gen_instance(10, 15, 5);
        let r = weiszfeld_reference(&inst, 1e-12).unwrap();
        assert!(r.residual <= 1e-6, "residual {}", r.residual);
    }
}
