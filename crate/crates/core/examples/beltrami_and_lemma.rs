//! Beltrami coefficient and the component inequalities of a
//! quasiconformal map satisfying a Poisson inequality.

use std::sync::Arc;

use qclab::diagnostics::{beltrami, check_component_inequality, fit_poisson_constants, m_sweep};
use qclab::field::{ComplexField, DiskGrid};

fn main() -> qclab::Result<()> {
    let grid = Arc::new(DiskGrid::unit_disk(65)?);
    let f = ComplexField::from_fn(&grid, |z| z + 0.3 * z.conj() + 0.05 * z * z.norm_sqr());
    let bel = beltrami(&f)?;
    println!(
        "k = {:.4}, quasiconformal: {}",
        bel.k,
        bel.is_quasiconformal()
    );

    let fit = fit_poisson_constants(&f, &m_sweep(2.0, 21))?;
    let (m, n) = fit.chosen;
    println!("chosen M = {m:.3}, N = {n:.3e}");
    let r = check_component_inequality(&f, m, n)?;
    println!("identity error {:.2e}", r.identity_max_error);
    println!("sandwich violations {}", r.sandwich_violations);
    println!(
        "M K bound: {} violations, max excess {:.2e}",
        r.stated_bound_violations, r.stated_bound_max_excess
    );
    println!(
        "M (1+K) bound: {} violations, max excess {:.2e}",
        r.implied_bound_violations, r.implied_bound_max_excess
    );
    Ok(())
}
