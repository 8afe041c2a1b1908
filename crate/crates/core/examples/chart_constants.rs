//! Extremal constants and conformal factors across the surface catalog.

use qclab::field::DiskGrid;
use qclab::surface_chart::{chart_constants, conformality_residual, SurfacePatch};

fn main() -> qclab::Result<()> {
    let grid = DiskGrid::unit_disk(65)?;
    for name in SurfacePatch::NAMES {
        let patch = SurfacePatch::from_name(name, &[])?;
        match chart_constants(&patch, &grid) {
            Ok(cc) => println!(
                "{name:<17} c = {:.4}  C = {:.4}  M' = {:.4}  max 2|X_uu|/|X_u| = {:.4}  C/c = {:.4}",
                cc.c,
                cc.big_c,
                cc.m_prime,
                cc.max_second_ratio,
                cc.c_over_c()
            ),
            Err(e) => println!("{name:<17} rejected ({e}); isothermality defect {:.3}", conformality_residual(&patch, &grid)),
        }
    }
    Ok(())
}
