use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::conformal_plane::{ConformalMap, PlaneMap};
use crate::error::{Error, Result};
use crate::field::DiskGrid;

/// Deviations between direct differences of `f̂ = φ∘f∘η` and the chain-rule
/// predictions built from differences of `f`.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub h: f64,
    pub nodes: usize,
    /// Interior nodes dropped because a stencil point left a map's domain.
    pub excluded: usize,
    pub dz_deviation: f64,
    pub dzbar_deviation: f64,
    pub laplacian_deviation: f64,
    pub max_deviation: f64,
}

struct Stencil {
    dz: Complex64,
    dzbar: Complex64,
    lap: Complex64,
}

/// Five-point differences of `g` around `z` with step `h`, or `None` if a
/// stencil point is undefined.
fn stencil(g: &dyn Fn(Complex64) -> Option<Complex64>, z: Complex64, h: f64) -> Option<Stencil> {
    let c = g(z)?;
    let e = g(z + h)?;
    let w = g(z - h)?;
    let n = g(z + Complex64::new(0.0, h))?;
    let s = g(z - Complex64::new(0.0, h))?;
    let fx = (e - w) / (2.0 * h);
    let fy = (n - s) / (2.0 * h);
    let i = Complex64::new(0.0, 1.0);
    Some(Stencil {
        dz: (fx - i * fy) * 0.5,
        dzbar: (fx + i * fy) * 0.5,
        lap: (e + w + n + s - c * 4.0) / (h * h),
    })
}

/// Checks `∂f̂ = φ'(f)·∂f(η)·η'`, `∂̄f̂ = φ'(f)·∂̄f(η)·conj(η')` and
/// `Δf̂ = (4φ''(f)·∂f·∂̄f + φ'(f)·Δf)(η)·|η'|²` at the interior nodes of
/// `grid`, with every derivative of `f` and `f̂` taken by the same stencil.
pub fn composition_laplacian_check(
    phi: &ConformalMap,
    f: &dyn PlaneMap,
    eta: &ConformalMap,
    grid: &Arc<DiskGrid>,
) -> Result<CompositionReport> {
    let h = grid.h();
    let domain = grid.domain();
    let f_at = |w: Complex64| {
        if f.defined_at(w) {
            Some(f.value(w))
        } else {
            None
        }
    };
    let fhat_at = |z: Complex64| {
        if !domain.contains(z) {
            return None;
        }
        let v = f_at(eta.eval(z))?;
        if phi.defined_at(v) {
            Some(phi.eval(v))
        } else {
            None
        }
    };
    let mut r = CompositionReport {
        h,
        nodes: 0,
        excluded: 0,
        dz_deviation: 0.0,
        dzbar_deviation: 0.0,
        laplacian_deviation: 0.0,
        max_deviation: 0.0,
    };
    for &idx in grid.interior_nodes() {
        let z = grid.coord(idx);
        let w = eta.eval(z);
        let (Some(direct), Some(inner)) = (stencil(&fhat_at, z, h), stencil(&f_at, w, h)) else {
            r.excluded += 1;
            continue;
        };
        let v = f.value(w);
        let (d1, d2, de) = (phi.deriv(v), phi.second(v), eta.deriv(z));
        let dz = d1 * inner.dz * de;
        let dzbar = d1 * inner.dzbar * de.conj();
        let lap = (d2 * inner.dz * inner.dzbar * 4.0 + d1 * inner.lap) * de.norm_sqr();
        r.dz_deviation = r.dz_deviation.max((direct.dz - dz).norm());
        r.dzbar_deviation = r.dzbar_deviation.max((direct.dzbar - dzbar).norm());
        r.laplacian_deviation = r.laplacian_deviation.max((direct.lap - lap).norm());
        r.nodes += 1;
    }
    if r.nodes == 0 {
        return Err(Error::Resolution(
            "no interior node supports both stencils".into(),
        ));
    }
    r.max_deviation = r
        .dz_deviation
        .max(r.dzbar_deviation)
        .max(r.laplacian_deviation);
    Ok(r)
}
