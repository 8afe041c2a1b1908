//! Gradient growth toward the boundary for smooth and for `|θ|^{1/2}` data.

use std::sync::Arc;

use qclab::diagnostics::{bilipschitz_probe, collar_profile};
use qclab::field::DiskGrid;
use qclab::solver::{default_samples, poisson_extension, BoundaryData};
use qclab::Complex64;

fn main() -> qclab::Result<()> {
    let n = 257;
    let grid = Arc::new(DiskGrid::unit_disk(n)?);
    let cases = [
        ("smooth", smooth_data()),
        (
            "sqrt",
            BoundaryData::new(|t| Complex64::new(t.abs().sqrt(), 0.0)),
        ),
    ];
    for (name, data) in cases {
        let ext = poisson_extension(&data, &grid, default_samples(n))?;
        let p = collar_profile(&ext.field, 16)?;
        println!(
            "{name}: {:?}, exponent {:.3}, spread {:.3}",
            p.verdict, p.exponent, p.spread
        );
        for c in &p.collars {
            println!(
                "  δ = {:.4}  nodes {:>5}  sup|Df| = {:.4}",
                c.delta, c.nodes, c.sup_grad
            );
        }
    }
    let smooth = poisson_extension(&smooth_data(), &grid, default_samples(n))?;
    let b = bilipschitz_probe(&smooth.field)?;
    println!(
        "smooth lower distortion min {:.4} (floor {:.4})",
        b.min_lower, b.floor
    );
    Ok(())
}

fn smooth_data() -> BoundaryData {
    BoundaryData::new(|t| Complex64::from_polar(1.0, t + 0.3 * t.sin()))
}
