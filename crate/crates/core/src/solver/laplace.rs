use std::sync::Arc;

use num_complex::Complex64;

use super::boundary::BoundaryData;
use super::sor::DirichletSystem;
use super::{Solution, SolveRecord};
use crate::error::Result;
use crate::field::{ComplexField, DiskGrid, Support};

/// Residual tolerance of the linear solve, in Laplacian units.
pub const LAPLACE_TOL: f64 = 1e-10;

/// Five-point (Shortley–Weller at the boundary) Dirichlet problem `Δu = 0`.
pub fn solve_laplace_dirichlet(grid: &Arc<DiskGrid>, data: &BoundaryData) -> Result<Solution> {
    solve_laplace_with_tol(grid, data, LAPLACE_TOL)
}

pub(crate) fn solve_laplace_with_tol(
    grid: &Arc<DiskGrid>,
    data: &BoundaryData,
    tol: f64,
) -> Result<Solution> {
    let system = DirichletSystem::new(grid, data);
    let mut u = initial_guess(grid, &system);
    let rhs = vec![Complex64::new(0.0, 0.0); grid.len()];
    let outcome = system.solve(&mut u, &rhs, tol)?;
    Ok(Solution {
        field: ComplexField::from_values(grid, Support::Active, u)?,
        record: SolveRecord {
            outer_iterations: 0,
            sweeps: outcome.sweeps,
            residual: outcome.residual,
            history: vec![outcome.residual],
        },
    })
}

/// Midpoint of the boundary data range on every active node.
pub(crate) fn initial_guess(grid: &DiskGrid, system: &DirichletSystem) -> Vec<Complex64> {
    let (lo, hi) = system.data_range();
    let mid = if lo.re.is_finite() && hi.re.is_finite() {
        (lo + hi) * 0.5
    } else {
        Complex64::new(0.0, 0.0)
    };
    let mut u = vec![Complex64::new(0.0, 0.0); grid.len()];
    for &idx in grid.active_nodes() {
        u[idx] = mid;
    }
    u
}
