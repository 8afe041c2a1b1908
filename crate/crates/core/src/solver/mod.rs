//! Dirichlet solvers: Laplace, ρ-harmonic and reduced quasilinear elliptic
//! equations, plus the Poisson-integral oracle on the disk.

mod boundary;
mod elliptic;
mod laplace;
mod poisson;
mod rho;
mod sor;

use num_complex::Complex64;
use serde::Serialize;

pub use boundary::BoundaryData;
pub use elliptic::{
    matmul, reduce_elliptic, solve_general_elliptic, spd_sqrt, transpose, Coefficient,
    EllipticCoeffs, EllipticSolution, Matrix, Primed, PrimedSup, ReducedCoeffs,
};
pub use laplace::{solve_laplace_dirichlet, LAPLACE_TOL};
pub use poisson::{
    default_samples, poisson_extension, poisson_kernel_quadrature, HarmonicExtension,
    PoissonExtension,
};
pub use rho::{
    analytic_rho_residual, discrete_rho_residual, solve_rho_harmonic, PicardSettings, SmoothMap,
};
pub use sor::{DirichletSystem, SorOutcome, MAX_SWEEPS};

use crate::error::Result;
use crate::field::{axis_derivative, ComplexField, Direction, DiskGrid};

/// Convergence record of a solve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveRecord {
    pub outer_iterations: usize,
    pub sweeps: usize,
    pub residual: f64,
    pub history: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub field: ComplexField,
    pub record: SolveRecord,
}

pub(crate) fn partials_at(
    grid: &DiskGrid,
    v: &[Complex64],
    idx: usize,
) -> Result<(Complex64, Complex64)> {
    Ok((
        axis_derivative(grid, v, idx, Direction::East, Direction::West)?,
        axis_derivative(grid, v, idx, Direction::North, Direction::South)?,
    ))
}

pub(crate) fn wirtinger_at(
    grid: &DiskGrid,
    v: &[Complex64],
    idx: usize,
) -> Result<(Complex64, Complex64)> {
    let (fx, fy) = partials_at(grid, v, idx)?;
    let i = Complex64::new(0.0, 1.0);
    Ok(((fx - i * fy) * 0.5, (fx + i * fy) * 0.5))
}
