use num_complex::Complex64;
use serde::Serialize;

use super::beltrami::beltrami;
use crate::error::{Error, Result};
use crate::field::{laplacian, partials, ComplexField};

/// Relative slack for the pointwise comparisons.
const SLACK: f64 = 1e-12;

/// Pointwise checks relating a quasiconformal `f = u + iv` to its components.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ComponentReport {
    pub k: f64,
    pub m: f64,
    pub n: f64,
    pub nodes: usize,
    /// Nodes with `|∇v|² = 0` (or degenerate `f_z`), left out.
    pub excluded: usize,
    /// Max relative gap between `A/B` and `|1+ν|²/|1-ν|²`.
    pub identity_max_error: f64,
    pub sandwich_violations: usize,
    pub sandwich_max_excess: f64,
    /// Violations of `|Δu| ≤ M K |∇u|² + N` with `K = (1+k)²/(1-k)²`.
    pub stated_bound_violations: usize,
    pub stated_bound_max_excess: f64,
    /// Violations of `|Δu| ≤ M (1+K) |∇u|² + N`, the bound implied by
    /// `|∇f|² = A + B` and the sandwich.
    pub implied_bound_violations: usize,
    pub implied_bound_max_excess: f64,
}

/// Checks, at every interior node: the identity `A/B = |1+ν|²/|1-ν|²`
/// with `ν = conj(f_zbar)/f_z`, the sandwich
/// `(1-k)²/(1+k)² ≤ A/B ≤ (1+k)²/(1-k)²`, and Poisson inequalities for
/// `u` and `v` given `|Δf| ≤ M|∇f|² + N`.
pub fn check_component_inequality(f: &ComplexField, m: f64, n: f64) -> Result<ComponentReport> {
    let bel = beltrami(f)?;
    if bel.k >= 1.0 {
        return Err(Error::Precondition(format!(
            "map is not quasiconformal: k = {}",
            bel.k
        )));
    }
    let k = bel.k;
    let big_k = ((1.0 + k) / (1.0 - k)).powi(2);
    let (fx, fy) = partials(f)?;
    let lap = laplacian(f)?;
    let i = Complex64::new(0.0, 1.0);
    let mut r = ComponentReport {
        k,
        m,
        n,
        ..Default::default()
    };
    for &idx in f.grid().interior_nodes() {
        r.nodes += 1;
        let (px, py) = (fx.at(idx), fy.at(idx));
        let a = px.re * px.re + py.re * py.re;
        let b = px.im * px.im + py.im * py.im;
        let fz = (px - i * py) * 0.5;
        let fzbar = (px + i * py) * 0.5;
        if b == 0.0 || !(fz.norm() > bel.floor) {
            r.excluded += 1;
            continue;
        }
        let nu = fzbar.conj() / fz;
        let ratio = a / b;
        let predicted = (1.0 + nu).norm_sqr() / (1.0 - nu).norm_sqr();
        r.identity_max_error = r
            .identity_max_error
            .max((ratio - predicted).abs() / predicted);
        let excess = (ratio - big_k).max(1.0 / big_k - ratio) / big_k;
        if excess > SLACK {
            r.sandwich_violations += 1;
        }
        r.sandwich_max_excess = r.sandwich_max_excess.max(excess);
        let d = lap.at(idx);
        for (part, grad) in [(d.re.abs(), a), (d.im.abs(), b)] {
            let scale = 1.0 + part;
            let stated = part - (m * big_k * grad + n);
            if stated > SLACK * scale {
                r.stated_bound_violations += 1;
            }
            r.stated_bound_max_excess = r.stated_bound_max_excess.max(stated);
            let implied = part - (m * (1.0 + big_k) * grad + n);
            if implied > SLACK * scale {
                r.implied_bound_violations += 1;
            }
            r.implied_bound_max_excess = r.implied_bound_max_excess.max(implied);
        }
    }
    Ok(r)
}
