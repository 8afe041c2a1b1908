//! Chain rule for `φ ∘ f ∘ η` with Möbius φ, η, checked by finite
//! differences under refinement.

use std::sync::Arc;

use qclab::conformal_plane::ConformalMap;
use qclab::diagnostics::composition_laplacian_check;
use qclab::field::DiskGrid;
use qclab::scenario::random_mobius;
use qclab::solver::{BoundaryData, HarmonicExtension};
use qclab::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qclab::Result<()> {
    let data = BoundaryData::new(|t| Complex64::from_polar(1.0, t + 0.3 * t.sin()));
    let f = HarmonicExtension::from_boundary(&data, 8192)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = ConformalMap::Mobius(random_mobius(&mut rng));
    let eta = ConformalMap::Mobius(random_mobius(&mut rng));
    let mut previous = None;
    for n in [65, 129, 257] {
        let r = composition_laplacian_check(&phi, &f, &eta, &Arc::new(DiskGrid::unit_disk(n)?))?;
        let ratio = previous
            .map(|p: f64| format!("{:.2}", p / r.max_deviation))
            .unwrap_or_else(|| "-".into());
        println!(
            "n = {n:>3}  ∂ {:.2e}  ∂̄ {:.2e}  Δ {:.2e}  ratio {ratio}",
            r.dz_deviation, r.dzbar_deviation, r.laplacian_deviation
        );
        previous = Some(r.max_deviation);
    }
    Ok(())
}
