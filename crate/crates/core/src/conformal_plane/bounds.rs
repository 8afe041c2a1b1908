use serde::Serialize;

use super::domain::Smoothness;
use super::maps::ConformalMap;
use crate::field::DiskGrid;

/// Extrema of `|ω'|` over a sample set.
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeBounds {
    pub inf_abs: f64,
    pub sup_abs: f64,
    pub samples: usize,
    /// Grid spacing of the sample set.
    pub h: f64,
    pub smoothness: Smoothness,
    /// `inf_abs` vanishes relative to `sup_abs` although the target boundary
    /// is smooth enough for `|ω'|` to stay away from zero.
    pub anomaly: bool,
}

/// Samples `|ω'|` at the active nodes of `grid` and at its boundary crossings.
pub fn derivative_bounds(map: &ConformalMap, grid: &DiskGrid) -> DerivativeBounds {
    let points = grid
        .active_nodes()
        .iter()
        .map(|&idx| grid.coord(idx))
        .chain(grid.crossings().map(|arm| arm.point));
    let mut inf_abs = f64::INFINITY;
    let mut sup_abs: f64 = 0.0;
    let mut samples = 0;
    for z in points {
        let d = map.deriv(z).norm();
        inf_abs = inf_abs.min(d);
        sup_abs = sup_abs.max(d);
        samples += 1;
    }
    let anomaly = !(inf_abs > 1e-8 * sup_abs);
    DerivativeBounds {
        inf_abs,
        sup_abs,
        samples,
        h: grid.h(),
        smoothness: map.target_smoothness(),
        anomaly,
    }
}
