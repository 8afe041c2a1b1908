//! ρ-harmonic map into the stereographic sphere chart, with the Poisson
//! constants it satisfies.

use std::sync::Arc;

use qclab::diagnostics::{beltrami, fit_poisson_constants, m_sweep};
use qclab::field::DiskGrid;
use qclab::solver::{discrete_rho_residual, solve_rho_harmonic, BoundaryData, PicardSettings};
use qclab::surface_chart::{chart_constants, conformal_factor, SurfacePatch};
use qclab::Complex64;

fn main() -> qclab::Result<()> {
    let grid = Arc::new(DiskGrid::unit_disk(129)?);
    let patch = SurfacePatch::SphereCap {
        radius: 1.0,
        scale: 1.0,
    };
    let rho = conformal_factor(&patch)?;
    let data = BoundaryData::new(|t| Complex64::from_polar(1.0, t + 0.3 * t.sin()));

    let sol = solve_rho_harmonic(&rho, &data, &grid, &PicardSettings::default())?;
    println!(
        "outer iterations {}, sweeps {}, residual {:.2e}",
        sol.record.outer_iterations, sol.record.sweeps, sol.record.residual
    );
    println!(
        "five-point residual {:.2e}",
        discrete_rho_residual(&sol.field, &rho)?
    );
    println!("dilatation k = {:.4}", beltrami(&sol.field)?.k);

    let m_prime = chart_constants(&patch, &grid)?.m_prime;
    let fit = fit_poisson_constants(&sol.field, &m_sweep(m_prime, 11))?;
    for (m, n) in &fit.curve {
        println!("M = {m:.2}  N(M) = {n:.3e}");
    }
    Ok(())
}
