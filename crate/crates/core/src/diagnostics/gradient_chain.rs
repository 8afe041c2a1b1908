use std::f64::consts::SQRT_2;

use serde::Serialize;

use super::beltrami::beltrami;
use crate::error::{Error, Result};
use crate::field::{partials, wirtinger_derivatives, ComplexField};

/// Tolerance beyond which a chain violation is counted.
pub const CHAIN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct GradientChainReport {
    pub k: f64,
    /// `sup |∇s|` for `s = Im f̂`.
    pub b_t: f64,
    pub nodes: usize,
    pub pointwise_violations: usize,
    /// `min (2|s_z| - (1-k)|∂f̂|)` over nodes.
    pub pointwise_min_slack: f64,
    /// `max (|∂f̂| + |∂̄f̂|)`.
    pub operator_sup: f64,
    /// `√2 (1+k)/(1-k) b_t`.
    pub global_bound: f64,
    pub global_slack: f64,
    pub holds: bool,
}

/// Checks `(1-k)|∂f̂| ≤ 2|s_z|` at every interior node and
/// `|∂f̂| + |∂̄f̂| ≤ √2 (1+k)/(1-k) sup|∇s|` over them, with `s = Im f̂`.
pub fn verify_gradient_chain(f_hat: &ComplexField) -> Result<GradientChainReport> {
    let bel = beltrami(f_hat)?;
    if !bel.is_quasiconformal() {
        return Err(Error::Precondition(format!(
            "gradient chain needs a quasiconformal field: k = {}, degenerate nodes = {}",
            bel.k, bel.degenerate_count
        )));
    }
    let k = bel.k;
    let (fz, fzbar) = wirtinger_derivatives(f_hat)?;
    let (sx, sy) = partials(&f_hat.imag_part())?;
    let nodes = f_hat.grid().interior_nodes();
    let mut b_t: f64 = 0.0;
    let mut operator_sup: f64 = 0.0;
    let mut min_slack = f64::INFINITY;
    let mut violations = 0;
    for &idx in nodes {
        let grad_s = sx.at(idx).hypot(sy.at(idx));
        b_t = b_t.max(grad_s);
        operator_sup = operator_sup.max(fz.at(idx).norm() + fzbar.at(idx).norm());
        // 2|s_z| = |∇s| for real s
        let slack = grad_s - (1.0 - k) * fz.at(idx).norm();
        if slack < -CHAIN_TOL {
            violations += 1;
        }
        min_slack = min_slack.min(slack);
    }
    let global_bound = SQRT_2 * (1.0 + k) / (1.0 - k) * b_t;
    let global_slack = global_bound - operator_sup;
    Ok(GradientChainReport {
        k,
        b_t,
        nodes: nodes.len(),
        pointwise_violations: violations,
        pointwise_min_slack: min_slack,
        operator_sup,
        global_bound,
        global_slack,
        holds: violations == 0 && global_slack >= -CHAIN_TOL,
    })
}
