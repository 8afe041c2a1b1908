use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::conformal_plane::ConformalMap;

/// Dirichlet data as a function of the boundary-curve parameter `t ∈ (-π, π]`.
#[derive(Clone)]
pub struct BoundaryData(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>);

impl BoundaryData {
    pub fn new(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        BoundaryData(Arc::new(f))
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(move |_| value)
    }

    /// Boundary values of a map evaluated on the unit circle.
    pub fn from_map(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::new(move |t| f(Complex64::from_polar(1.0, t)))
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        (self.0)(t)
    }

    /// Data on `∂Ω` pulled back to the unit circle through `ω: 𝕌 → Ω`,
    /// with `param_of` recovering the curve parameter of a boundary point.
    pub fn transplant(
        &self,
        map: ConformalMap,
        param_of: impl Fn(Complex64) -> f64 + Send + Sync + 'static,
    ) -> BoundaryData {
        let data = self.clone();
        BoundaryData::new(move |t| data.eval(param_of(map.eval(Complex64::from_polar(1.0, t)))))
    }
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BoundaryData(..)")
    }
}
