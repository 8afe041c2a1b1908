//! Reduction of an anisotropic quasilinear equation to `ΔW = F` and its
//! solution on the transformed domain.

use std::sync::Arc;

use qclab::field::DiskGrid;
use qclab::solver::{
    solve_general_elliptic, BoundaryData, Coefficient, EllipticCoeffs, PicardSettings,
};
use qclab::Complex64;

fn main() -> qclab::Result<()> {
    // 2 w_xx + w_xy + w_yy + 0.2 (w_x² + w_y²) = 0
    let mut ec = EllipticCoeffs::new(2.0, 0.5, 1.0)?;
    ec.a1 = Coefficient::constant(0.2);
    ec.c1 = Coefficient::constant(0.2);
    let grid = Arc::new(DiskGrid::unit_disk(97)?);
    let data = BoundaryData::new(|t| Complex64::new(t.cos(), 0.5 * (2.0 * t).sin()));
    let sol = solve_general_elliptic(&ec, &data, &grid, &PicardSettings::default())?;
    let r = &sol.reduced;
    println!("Q = {:?}", r.substitution);
    println!("Q A Qᵀ = {:?}", r.reduced_principal());
    println!("M = {:.4}, N = {:.4}, sup |w| = {:.4}", r.m, r.n, r.w_sup);
    println!(
        "Picard: {} outer iterations, residual {:.2e}",
        sol.solution.record.outer_iterations, sol.solution.record.residual
    );
    let centre = sol.grid.active_nodes()[sol.grid.active_nodes().len() / 2];
    let u = sol.grid.coord(centre);
    println!(
        "w({:.3}) = {:.5}",
        sol.original_coord(u),
        sol.solution.field.at(centre)
    );
    Ok(())
}
