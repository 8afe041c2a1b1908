use num_complex::Complex64;
use serde::Serialize;

use super::patch::{dot, norm, PatchJet, SurfacePatch};
use crate::error::{Error, Result};
use crate::field::DiskGrid;

/// Absolute tolerance on `||X_u|² − |X_v|²| + |⟨X_u, X_v⟩|` (relative to
/// `max(1, |X_u|²)`) below which a patch counts as isothermal.
pub const ISOTHERMAL_TOL: f64 = 1e-10;

/// First fundamental form `(E, F, G)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

pub fn metric_tensor(patch: &SurfacePatch, w: Complex64) -> Result<Metric> {
    if w.norm() > 1.0 + 1e-9 {
        return Err(Error::Parameter(format!(
            "point {w} outside the closed unit disk"
        )));
    }
    let j = patch.jet(w);
    let m = Metric {
        e: dot(&j.xu, &j.xu),
        f: dot(&j.xu, &j.xv),
        g: dot(&j.xv, &j.xv),
    };
    if !(m.e * m.g - m.f * m.f > 1e-14 * m.e * m.g) || m.e == 0.0 || m.g == 0.0 {
        return Err(Error::Singular {
            point: format!("{w}"),
        });
    }
    Ok(m)
}

fn isothermal_defect(j: &PatchJet) -> f64 {
    (dot(&j.xu, &j.xu) - dot(&j.xv, &j.xv)).abs() + dot(&j.xu, &j.xv).abs()
}

/// Largest isothermality defect over the active nodes of `grid`.
pub fn conformality_residual(patch: &SurfacePatch, grid: &DiskGrid) -> f64 {
    grid.active_nodes()
        .iter()
        .map(|&idx| isothermal_defect(&patch.jet(grid.coord(idx))))
        .fold(0.0, f64::max)
}

pub(crate) fn check_isothermal(patch: &SurfacePatch, grid: &DiskGrid) -> Result<()> {
    let scale = grid
        .active_nodes()
        .iter()
        .map(|&idx| {
            let j = patch.jet(grid.coord(idx));
            dot(&j.xu, &j.xu)
        })
        .fold(1.0, f64::max);
    let residual = conformality_residual(patch, grid);
    if residual > ISOTHERMAL_TOL * scale {
        return Err(Error::Contract(format!(
            "patch `{}` is not isothermal (conformality residual {residual:.3e})",
            patch.name()
        )));
    }
    Ok(())
}

/// `(log |X_u|²)_w = (⟨X_uu, X_u⟩ − i⟨X_uv, X_u⟩) / |X_u|²`.
pub(crate) fn log_rho_w(j: &PatchJet) -> Complex64 {
    Complex64::new(dot(&j.xuu, &j.xu), -dot(&j.xuv, &j.xu)) / dot(&j.xu, &j.xu)
}

/// Second expression `(⟨X_uu, X_u⟩ + i⟨X_uu, X_v⟩) / |X_u|²`, equal to
/// the first one on isothermal patches.
pub(crate) fn log_rho_w_alt(j: &PatchJet) -> Complex64 {
    Complex64::new(dot(&j.xuu, &j.xu), dot(&j.xuu, &j.xv)) / dot(&j.xu, &j.xu)
}

/// Extremal constants of an isothermal chart over a sample set.
#[derive(Clone, Debug, Serialize)]
pub struct ChartConstants {
    /// `min |X_u|`.
    pub c: f64,
    /// `max (|X_uu| + |X_uv| + |X_vv|)`.
    #[serde(rename = "C")]
    pub big_c: f64,
    /// `max |(log |X_u|²)_w|`.
    pub m_prime: f64,
    /// `max 2|X_uu| / |X_u|`.
    pub max_second_ratio: f64,
    pub samples: usize,
    /// Grid spacing of the sample set.
    pub h: f64,
    /// Samples where `2|X_uu|/|X_u| > C/c`.
    pub ratio_above_c_over_c: usize,
}

impl ChartConstants {
    pub fn c_over_c(&self) -> f64 {
        self.big_c / self.c
    }
}

/// Chart constants over the active nodes and boundary crossings of `grid`.
///
/// Fails if the patch is not isothermal or if `|ρ_w| ≤ 2|X_uu|/|X_u|` is
/// violated at some sample.
pub fn chart_constants(patch: &SurfacePatch, grid: &DiskGrid) -> Result<ChartConstants> {
    check_isothermal(patch, grid)?;
    let points: Vec<Complex64> = grid
        .active_nodes()
        .iter()
        .map(|&idx| grid.coord(idx))
        .chain(grid.crossings().map(|a| a.point))
        .collect();

    let mut c = f64::INFINITY;
    let mut big_c: f64 = 0.0;
    let mut m_prime: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    let mut ratios = Vec::with_capacity(points.len());
    for &w in &points {
        let j = patch.jet(w);
        let xu = norm(&j.xu);
        let rho_w = log_rho_w(&j).norm();
        let ratio = 2.0 * norm(&j.xuu) / xu;
        if rho_w > ratio * (1.0 + 1e-12) + 1e-14 {
            return Err(Error::Contract(format!(
                "|rho_w| = {rho_w:.6e} exceeds 2|X_uu|/|X_u| = {ratio:.6e} at {w}"
            )));
        }
        c = c.min(xu);
        big_c = big_c.max(norm(&j.xuu) + norm(&j.xuv) + norm(&j.xvv));
        m_prime = m_prime.max(rho_w);
        max_ratio = max_ratio.max(ratio);
        ratios.push(ratio);
    }
    if !(c > 0.0) {
        return Err(Error::Singular {
            point: "sample set".into(),
        });
    }
    let bound = big_c / c;
    let ratio_above = ratios
        .iter()
        .filter(|&&r| r > bound * (1.0 + 1e-12))
        .count();
    Ok(ChartConstants {
        c,
        big_c,
        m_prime,
        max_second_ratio: max_ratio,
        samples: points.len(),
        h: grid.h(),
        ratio_above_c_over_c: ratio_above,
    })
}
