//! The moment map of a lattice polytope, for drawing charts. Floating point.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::lattice::LatticePolytope;

/// Logarithmic half-width of the sampled parameter box: `x_k` in `[10^-3, 10^3]`.
const LOG_RANGE: f64 = 3.0 * std::f64::consts::LN_10;

#[derive(Clone, Debug, Serialize)]
pub struct MomentSample {
    pub x: Vec<f64>,
    pub mu: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentImage {
    pub grid: usize,
    pub samples: Vec<MomentSample>,
}

/// `mu(x) = sum x^i i / sum x^i` over the lattice points `i` of `delta`, for a
/// positive `x`, evaluated in log space.
pub fn moment_map(points: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let exps: Vec<f64> = points.iter().map(|p| p.iter().zip(&logs).map(|(a, b)| a * b).sum()).collect();
    let top = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exps.iter().map(|e| (e - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    (0..x.len()).map(|k| points.iter().zip(&weights).map(|(p, w)| p[k] * w).sum::<f64>() / total).collect()
}

/// Samples the moment map on a log-uniform `grid^n` box of positive parameters.
pub fn moment_render(delta: &LatticePolytope, grid: usize) -> Result<MomentImage> {
    if !delta.is_full_dimensional() {
        return invalid("the moment map needs a full-dimensional polytope");
    }
    if grid == 0 {
        return invalid("the grid needs at least one sample per axis");
    }
    let n = delta.ambient_dim();
    let points: Vec<Vec<f64>> =
        delta.lattice_points().iter().map(|p| p.coords().iter().map(|&c| c as f64).collect()).collect();
    let axis: Vec<f64> = (0..grid)
        .map(|k| if grid == 1 { 1.0 } else { (-LOG_RANGE + 2.0 * LOG_RANGE * k as f64 / (grid - 1) as f64).exp() })
        .collect();
    let mut samples = Vec::with_capacity(grid.pow(n as u32));
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<f64> = idx.iter().map(|&i| axis[i]).collect();
        let mu = moment_map(&points, &x);
        samples.push(MomentSample { x, mu });
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(MomentImage { grid, samples });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < grid {
                break;
            }
            idx[k] = 0;
        }
    }
}
