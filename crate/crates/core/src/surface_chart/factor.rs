use num_complex::Complex64;
use serde::Serialize;

use super::constants::{check_isothermal, log_rho_w, log_rho_w_alt};
use super::patch::{dot, SurfacePatch};
use crate::error::{Error, Result};
use crate::field::{weighted_dirichlet_energy, ComplexField, DiskGrid};

/// Slack on the chart domain when evaluating a factor along an iterate.
pub const DOMAIN_SLACK: f64 = 1e-6;

/// Conformal factor `ρ = |X_u|²` of an isothermal chart, evaluable on the
/// chart's domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConformalFactor {
    /// `ρ ≡ value`; defined on the whole plane.
    Constant { value: f64 },
    /// Factor of a catalog patch on the closed unit disk.
    Chart { patch: SurfacePatch },
}

impl ConformalFactor {
    pub fn constant(value: f64) -> Result<Self> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Parameter(format!(
                "constant factor must be positive, got {value}"
            )));
        }
        Ok(ConformalFactor::Constant { value })
    }

    pub fn contains(&self, w: Complex64) -> bool {
        match self {
            ConformalFactor::Constant { .. } => w.re.is_finite() && w.im.is_finite(),
            ConformalFactor::Chart { .. } => w.norm() <= 1.0 + DOMAIN_SLACK,
        }
    }

    fn checked(&self, w: Complex64) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                modulus: w.norm(),
                history: Vec::new(),
            })
        }
    }

    pub fn rho(&self, w: Complex64) -> f64 {
        match self {
            ConformalFactor::Constant { value } => *value,
            ConformalFactor::Chart { patch } => {
                let j = patch.jet(w);
                dot(&j.xu, &j.xu)
            }
        }
    }

    /// `(log ρ)_w`.
    pub fn log_rho_w(&self, w: Complex64) -> Complex64 {
        match self {
            ConformalFactor::Constant { .. } => Complex64::new(0.0, 0.0),
            ConformalFactor::Chart { patch } => log_rho_w(&patch.jet(w)),
        }
    }

    /// `(log ρ)_w` through the alternative inner-product expression.
    pub fn log_rho_w_alt(&self, w: Complex64) -> Complex64 {
        match self {
            ConformalFactor::Constant { .. } => Complex64::new(0.0, 0.0),
            ConformalFactor::Chart { patch } => log_rho_w_alt(&patch.jet(w)),
        }
    }

    pub fn checked_rho(&self, w: Complex64) -> Result<f64> {
        self.checked(w)?;
        Ok(self.rho(w))
    }

    pub fn checked_log_rho_w(&self, w: Complex64) -> Result<Complex64> {
        self.checked(w)?;
        Ok(self.log_rho_w(w))
    }
}

/// Grid used to certify isothermality before building a factor.
const CERTIFY_NODES: usize = 65;

/// Conformal factor of an isothermal patch. Both expressions for `(log ρ)_w`
/// are required to agree on the certification grid.
pub fn conformal_factor(patch: &SurfacePatch) -> Result<ConformalFactor> {
    let grid = DiskGrid::unit_disk(CERTIFY_NODES)?;
    check_isothermal(patch, &grid)?;
    let factor = ConformalFactor::Chart {
        patch: patch.clone(),
    };
    for &idx in grid.active_nodes() {
        let w = grid.coord(idx);
        let (a, b) = (factor.log_rho_w(w), factor.log_rho_w_alt(w));
        if (a - b).norm() > 1e-10 * (1.0 + a.norm()) {
            return Err(Error::Contract(format!(
                "(log rho)_w expressions disagree at {w}: {a} vs {b}"
            )));
        }
    }
    Ok(factor)
}

/// `∬ ρ(g) (|g_x|² + |g_y|²)` with the same quadrature as the Dirichlet energy.
pub fn weighted_energy(g: &ComplexField, rho: &ConformalFactor) -> Result<f64> {
    weighted_dirichlet_energy(g, |w| rho.checked_rho(w))
}
