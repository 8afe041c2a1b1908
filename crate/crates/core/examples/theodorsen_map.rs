//! Conformal map of the disk onto a star-shaped domain.

use qclab::conformal_plane::{derivative_bounds, theodorsen_map, ConformalMap, PlanarDomain};
use qclab::diagnostics::beltrami_of_map;
use qclab::field::DiskGrid;
use qclab::Complex64;
use std::sync::Arc;

fn main() -> qclab::Result<()> {
    // r(θ) = 1 + 0.2 cos 2θ
    let domain = PlanarDomain::polar(vec![1.0, 0.0, 0.0, 0.2, 0.0])?;
    let omega = theodorsen_map(&domain, 256)?;
    if let ConformalMap::Theodorsen(t) = &omega {
        println!(
            "modes {}, residual {:.2e}, monotone {}",
            t.n_modes(),
            t.residual(),
            t.is_monotone()
        );
    }
    let grid = Arc::new(DiskGrid::unit_disk(129)?);
    let b = derivative_bounds(&omega, &grid);
    println!("|ω'| in [{:.4}, {:.4}]", b.inf_abs, b.sup_abs);
    println!(
        "closed-form dilatation {:.1e}",
        beltrami_of_map(&omega, &grid)?.k
    );
    for k in 0..4 {
        let t = k as f64 * std::f64::consts::FRAC_PI_4;
        let w = omega.eval(Complex64::from_polar(1.0, t));
        println!(
            "ω(e^(i{t:.3})) = {w:.4}, on curve: {:.1e}",
            domain.boundary.nearest(w).1
        );
    }
    Ok(())
}
