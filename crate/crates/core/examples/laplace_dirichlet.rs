//! Harmonic extension of a boundary homeomorphism, checked against the
//! Poisson integral at three resolutions.

use std::sync::Arc;

use qclab::field::DiskGrid;
use qclab::solver::{default_samples, poisson_extension, solve_laplace_dirichlet, BoundaryData};
use qclab::Complex64;

fn main() -> qclab::Result<()> {
    let data = BoundaryData::new(|t| Complex64::from_polar(1.0, t + 0.3 * t.sin()));
    let mut previous = None;
    for n in [65, 129, 257] {
        let grid = Arc::new(DiskGrid::unit_disk(n)?);
        let sol = solve_laplace_dirichlet(&grid, &data)?;
        let oracle = poisson_extension(&data, &grid, default_samples(n))?;
        let err = sol.field.max_abs_diff(&oracle.field)?;
        let ratio = previous
            .map(|p: f64| format!("{:.2}", p / err))
            .unwrap_or_else(|| "-".into());
        println!(
            "n = {n:>3}  sweeps = {:>5}  residual = {:.1e}  error = {err:.3e}  ratio = {ratio}",
            sol.record.sweeps, sol.record.residual
        );
        previous = Some(err);
    }
    Ok(())
}
