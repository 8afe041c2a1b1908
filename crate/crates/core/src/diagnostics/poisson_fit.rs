use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gradient_norm_sq, laplacian, ComplexField};

/// `N(M) = max (|Δf| - M|∇f|²)₊` over interior nodes for each swept `M`.
#[derive(Clone, Debug, Serialize)]
pub struct PoissonFit {
    /// `(M, N(M))` with `M` ascending.
    pub curve: Vec<(f64, f64)>,
    /// Pair minimising `M + N / scale`.
    pub chosen: (f64, f64),
    /// `max |∇f|²`, the trade-off scale between `M` and `N`.
    pub scale: f64,
    /// The chosen pair re-verified at every interior node.
    pub residual_ok: bool,
}

impl PoissonFit {
    /// `N` at the smallest swept `M ≥ m`, if any.
    pub fn n_at_least(&self, m: f64) -> Option<f64> {
        self.curve.iter().find(|(mm, _)| *mm >= m).map(|p| p.1)
    }
}

pub fn fit_poisson_constants(f: &ComplexField, m_sweep: &[f64]) -> Result<PoissonFit> {
    if m_sweep.is_empty() {
        return Err(Error::Parameter("empty M sweep".into()));
    }
    if m_sweep.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
        return Err(Error::Parameter(
            "M values must be finite and non-negative".into(),
        ));
    }
    let lap = laplacian(f)?;
    let grad = gradient_norm_sq(f)?;
    let nodes = f.grid().interior_nodes();
    if nodes.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let pairs: Vec<(f64, f64)> = nodes
        .iter()
        .map(|&i| (lap.at(i).norm(), grad.at(i)))
        .collect();
    let mut ms = m_sweep.to_vec();
    ms.sort_by(f64::total_cmp);
    ms.dedup();
    let n_of = |m: f64| pairs.iter().map(|&(l, g)| l - m * g).fold(0.0, f64::max);
    let curve: Vec<(f64, f64)> = ms.iter().map(|&m| (m, n_of(m))).collect();
    let top = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    let scale = if top > 0.0 { top } else { 1.0 };
    let chosen = curve
        .iter()
        .copied()
        .min_by(|a, b| (a.0 + a.1 / scale).total_cmp(&(b.0 + b.1 / scale)))
        .expect("non-empty sweep");
    let residual_ok = pairs
        .iter()
        .all(|&(l, g)| l <= chosen.0 * g + chosen.1 + 1e-12 * (1.0 + l));
    Ok(PoissonFit {
        curve,
        chosen,
        scale,
        residual_ok,
    })
}

/// `count` evenly spaced values on `[0, max]`.
pub fn m_sweep(max: f64, count: usize) -> Vec<f64> {
    let count = count.max(2);
    (0..count)
        .map(|i| max * i as f64 / (count - 1) as f64)
        .collect()
}
