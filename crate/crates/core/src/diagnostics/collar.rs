use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{wirtinger_derivatives, ComplexField, DiskGrid};

/// Relative spread of the last three collars below which the profile is flat.
pub const PLATEAU_SPREAD: f64 = 0.15;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Collar {
    /// Outer distance `δ_j`; the band is `δ_j/2 ≤ d < δ_j`.
    pub delta: f64,
    pub nodes: usize,
    pub sup_grad: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollarVerdict {
    Plateau,
    Growth,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollarProfile {
    pub collars: Vec<Collar>,
    pub lipschitz_estimate: f64,
    pub verdict: CollarVerdict,
    /// Least-squares slope of `log sup_grad` against `log δ`.
    pub exponent: f64,
    /// `(max - min)/max` over the last three collars.
    pub spread: f64,
}

/// Distances of active nodes to the boundary, and the outer collar edge
/// (half the largest distance).
fn distances(grid: &DiskGrid) -> (Vec<f64>, f64) {
    let mut d = vec![f64::NAN; grid.len()];
    let mut top: f64 = 0.0;
    for &idx in grid.active_nodes() {
        d[idx] = grid.distance_to_boundary(idx);
        top = top.max(d[idx]);
    }
    (d, 0.5 * top)
}

fn bands(grid: &DiskGrid, n_collars: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (dist, delta0) = distances(grid);
    let mut deltas = Vec::new();
    let mut delta = delta0;
    while deltas.len() < n_collars && delta / 2.0 >= grid.h() {
        deltas.push(delta);
        delta /= 2.0;
    }
    if deltas.len() < 3 {
        return Err(Error::Resolution(format!(
            "only {} dyadic collars fit at h = {}",
            deltas.len(),
            grid.h()
        )));
    }
    Ok((dist, deltas))
}

fn band_of(deltas: &[f64], d: f64) -> Option<usize> {
    deltas
        .iter()
        .position(|&delta| d < delta && d >= delta / 2.0)
}

/// Supremum of `|f_z| + |f_zbar|` over dyadic bands approaching the boundary.
pub fn collar_profile(f: &ComplexField, n_collars: usize) -> Result<CollarProfile> {
    let grid = f.grid();
    let (dist, deltas) = bands(grid, n_collars)?;
    let (fz, fzbar) = wirtinger_derivatives(f)?;
    let mut collars: Vec<Collar> = deltas
        .iter()
        .map(|&delta| Collar {
            delta,
            nodes: 0,
            sup_grad: 0.0,
        })
        .collect();
    for &idx in grid.active_nodes() {
        if let Some(j) = band_of(&deltas, dist[idx]) {
            collars[j].nodes += 1;
            collars[j].sup_grad = collars[j]
                .sup_grad
                .max(fz.at(idx).norm() + fzbar.at(idx).norm());
        }
    }
    collars.retain(|c| c.nodes > 0);
    if collars.len() < 3 {
        return Err(Error::Resolution(format!(
            "only {} collars are populated",
            collars.len()
        )));
    }
    let last = &collars[collars.len() - 3..];
    let hi = last.iter().map(|c| c.sup_grad).fold(0.0, f64::max);
    let lo = last
        .iter()
        .map(|c| c.sup_grad)
        .fold(f64::INFINITY, f64::min);
    let spread = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
    let verdict = if spread < PLATEAU_SPREAD {
        CollarVerdict::Plateau
    } else {
        CollarVerdict::Growth
    };
    Ok(CollarProfile {
        exponent: log_log_slope(&collars),
        lipschitz_estimate: lipschitz_estimate(f),
        collars,
        verdict,
        spread,
    })
}

fn log_log_slope(collars: &[Collar]) -> f64 {
    let pts: Vec<(f64, f64)> = collars
        .iter()
        .filter(|c| c.sup_grad > 0.0)
        .map(|c| (c.delta.ln(), c.sup_grad.ln()))
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// Largest difference quotient over grid edges touching a boundary node.
fn lipschitz_estimate(f: &ComplexField) -> f64 {
    let grid = f.grid();
    let h = grid.h();
    let mut best: f64 = 0.0;
    for &idx in grid.boundary_nodes() {
        for d in crate::field::Direction::ALL {
            if let Some(k) = grid.neighbor(idx, d).filter(|&k| grid.is_active(k)) {
                best = best.max((f.at(idx) - f.at(k)).norm() / h);
            }
        }
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct BilipschitzReport {
    /// `(δ_j, inf (|f_z| - |f_zbar|))` per collar.
    pub collars: Vec<(f64, f64)>,
    pub floor: f64,
    pub min_lower: f64,
    pub above_floor: bool,
}

/// Lower floor for `|f_z| - |f_zbar|`, relative to the mean operator norm.
pub const BILIPSCHITZ_FLOOR: f64 = 1e-2;

/// Per-collar infimum of the lower distortion `|f_z| - |f_zbar|`.
pub fn bilipschitz_probe(f: &ComplexField) -> Result<BilipschitzReport> {
    let grid = f.grid();
    let (dist, deltas) = bands(grid, usize::MAX)?;
    let (fz, fzbar) = wirtinger_derivatives(f)?;
    let mut inf = vec![f64::INFINITY; deltas.len()];
    let mut mean = 0.0;
    let mut count = 0usize;
    for &idx in grid.active_nodes() {
        mean += fz.at(idx).norm() + fzbar.at(idx).norm();
        count += 1;
        if let Some(j) = band_of(&deltas, dist[idx]) {
            inf[j] = inf[j].min(fz.at(idx).norm() - fzbar.at(idx).norm());
        }
    }
    let floor = BILIPSCHITZ_FLOOR * mean / count.max(1) as f64;
    let collars: Vec<(f64, f64)> = deltas
        .into_iter()
        .zip(inf)
        .filter(|(_, v)| v.is_finite())
        .collect();
    let min_lower = collars.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    Ok(BilipschitzReport {
        above_floor: min_lower > floor,
        collars,
        floor,
        min_lower,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::Complex64;

    fn disk(n: usize) -> Arc<DiskGrid> {
        Arc::new(DiskGrid::unit_disk(n).unwrap())
    }

    #[test]
    fn identity_plateau() {
        let p = collar_profile(&ComplexField::from_fn(&disk(65), |z| z), 10).unwrap();
        assert_eq!(p.verdict, CollarVerdict::Plateau);
        assert!(p.collars.iter().all(|c| (c.sup_grad - 1.0).abs() < 1e-12));
        assert!(p.collars.windows(2).all(|w| w[1].delta < w[0].delta));
        assert!((p.lipschitz_estimate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coarse_grid_is_a_resolution_error() {
        let p = collar_profile(&ComplexField::from_fn(&disk(33), |z| z), 2);
        assert!(matches!(p, Err(Error::Resolution(_))));
    }

    #[test]
    fn bilipschitz_values() {
        let r = bilipschitz_probe(&ComplexField::from_fn(&disk(65), |z| z)).unwrap();
        assert!(r.collars.iter().all(|c| (c.1 - 1.0).abs() < 1e-12));
        assert!(r.above_floor);
        let r =
            bilipschitz_probe(&ComplexField::from_fn(&disk(65), |z| z + 0.3 * z.conj())).unwrap();
        assert!(r.collars.iter().all(|c| (c.1 - 0.7).abs() < 1e-12));
        let r = bilipschitz_probe(&ComplexField::from_fn(&disk(65), |z: Complex64| {
            z * z.norm()
        }))
        .unwrap();
        assert!(r.min_lower > 0.0);
    }
}
