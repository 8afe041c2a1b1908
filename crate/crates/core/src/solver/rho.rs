use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundary::BoundaryData;
use super::laplace::{initial_guess, solve_laplace_with_tol};
use super::sor::DirichletSystem;
use super::{wirtinger_at, Solution, SolveRecord};
use crate::error::{Error, Result};
use crate::field::{ComplexField, DiskGrid, Support};
use crate::surface_chart::ConformalFactor;

/// Damped Picard controls shared by the nonlinear solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardSettings {
    pub tol: f64,
    pub relaxation: f64,
    pub max_outer: usize,
}

impl Default for PicardSettings {
    fn default() -> Self {
        PicardSettings {
            tol: 1e-8,
            relaxation: 0.5,
            max_outer: 500,
        }
    }
}

impl PicardSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !(self.relaxation > 0.0 && self.relaxation <= 1.0) {
            return Err(Error::Parameter(format!(
                "relaxation must lie in (0, 1], got {}",
                self.relaxation
            )));
        }
        if self.max_outer == 0 {
            return Err(Error::Parameter("max_outer must be positive".into()));
        }
        Ok(())
    }

    fn inner_tol(&self) -> f64 {
        (self.tol * 1e-2).max(1e-12)
    }
}

/// Smallest relaxation reached by repeated halving.
const MIN_RELAXATION: f64 = 1.0 / 1024.0;

/// Solves `Δg = F(g)` by damped Picard iteration, where `rhs` fills the
/// right-hand side from the current iterate.
pub(crate) fn picard(
    grid: &Arc<DiskGrid>,
    data: &BoundaryData,
    settings: &PicardSettings,
    what: &'static str,
    mut rhs: impl FnMut(&[Complex64], &mut [Complex64]) -> Result<()>,
    start: Option<Vec<Complex64>>,
) -> Result<Solution> {
    settings.validate()?;
    let system = DirichletSystem::new(grid, data);
    let mut g = match start {
        Some(g) => g,
        None => {
            let mut g = initial_guess(grid, &system);
            let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
            system.solve(&mut g, &zero, settings.inner_tol())?;
            g
        }
    };
    let mut f = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut history = Vec::new();
    let mut lambda = settings.relaxation;
    let mut sweeps = 0;
    let mut previous = f64::INFINITY;
    let mut next = g.clone();
    for outer in 0..=settings.max_outer {
        if let Err(e) = rhs(&g, &mut f) {
            return Err(attach_history(e, history));
        }
        let residual = system.residual(&g, &f);
        history.push(residual);
        if !residual.is_finite() {
            break;
        }
        if residual <= settings.tol {
            let field = ComplexField::from_values(grid, Support::Active, g)?;
            return Ok(Solution {
                field,
                record: SolveRecord {
                    outer_iterations: outer,
                    sweeps,
                    residual,
                    history,
                },
            });
        }
        if outer == settings.max_outer {
            break;
        }
        if residual > previous {
            lambda = (lambda * 0.5).max(MIN_RELAXATION);
        }
        previous = residual;
        next.copy_from_slice(&g);
        sweeps += system.solve(&mut next, &f, settings.inner_tol())?.sweeps;
        for &idx in grid.active_nodes() {
            g[idx] = g[idx] * (1.0 - lambda) + next[idx] * lambda;
        }
    }
    Err(Error::Convergence {
        what,
        iterations: history.len().saturating_sub(1),
        residual: history.last().copied().unwrap_or(f64::NAN),
        history,
    })
}

fn attach_history(e: Error, history: Vec<f64>) -> Error {
    match e {
        Error::OutOfDomain { modulus, .. } => Error::OutOfDomain { modulus, history },
        other => other,
    }
}

/// `F(g) = -4 (log ρ)_w(g) g_z g_zbar` on every active node.
pub(crate) fn rho_rhs(
    grid: &DiskGrid,
    rho: &ConformalFactor,
    g: &[Complex64],
    out: &mut [Complex64],
) -> Result<()> {
    for &idx in grid.active_nodes() {
        let l = rho.checked_log_rho_w(g[idx])?;
        let (gz, gzbar) = wirtinger_at(grid, g, idx)?;
        out[idx] = -4.0 * l * gz * gzbar;
    }
    Ok(())
}

/// Dirichlet problem for `g_zzbar + (log ρ)_w(g) g_z g_zbar = 0`.
///
/// Starts from the harmonic solution with the same data. A constant factor
/// returns that harmonic solution unchanged.
pub fn solve_rho_harmonic(
    rho: &ConformalFactor,
    data: &BoundaryData,
    grid: &Arc<DiskGrid>,
    settings: &PicardSettings,
) -> Result<Solution> {
    settings.validate()?;
    let start = solve_laplace_with_tol(grid, data, settings.inner_tol())?;
    if matches!(rho, ConformalFactor::Constant { .. }) {
        return Ok(start);
    }
    let start_sweeps = start.record.sweeps;
    let mut sol = picard(
        grid,
        data,
        settings,
        "rho-harmonic Picard",
        |g, out| rho_rhs(grid, rho, g, out),
        Some(start.field.values().to_vec()),
    )?;
    sol.record.sweeps += start_sweeps;
    Ok(sol)
}

/// Map with closed-form Wirtinger derivatives up to `g_zzbar`.
pub trait SmoothMap {
    fn value(&self, z: Complex64) -> Complex64;
    fn dz(&self, z: Complex64) -> Complex64;
    fn dzbar(&self, z: Complex64) -> Complex64;
    fn dzdzbar(&self, z: Complex64) -> Complex64;
}

impl SmoothMap for crate::conformal_plane::ConformalMap {
    fn value(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
    fn dz(&self, z: Complex64) -> Complex64 {
        self.deriv(z)
    }
    fn dzbar(&self, _z: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn dzdzbar(&self, _z: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

/// Max over active nodes of `|g_zzbar + (log ρ)_w(g) g_z g_zbar|` using
/// the map's own derivatives.
pub fn analytic_rho_residual(
    map: &dyn SmoothMap,
    rho: &ConformalFactor,
    grid: &DiskGrid,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &idx in grid.active_nodes() {
        let z = grid.coord(idx);
        let l = rho.checked_log_rho_w(map.value(z))?;
        let r = map.dzdzbar(z) + l * map.dz(z) * map.dzbar(z);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Max over interior nodes of `|Δ_h g + 4 (log ρ)_w(g) g_z g_zbar|` with
/// five-point and central-difference stencils.
pub fn discrete_rho_residual(g: &ComplexField, rho: &ConformalFactor) -> Result<f64> {
    let lap = crate::field::laplacian(g)?;
    let (gz, gzbar) = crate::field::wirtinger_derivatives(g)?;
    let mut worst: f64 = 0.0;
    for &idx in g.grid().interior_nodes() {
        let l = rho.checked_log_rho_w(g.at(idx))?;
        worst = worst.max((lap.at(idx) + 4.0 * l * gz.at(idx) * gzbar.at(idx)).norm());
    }
    Ok(worst)
}
