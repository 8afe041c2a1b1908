//! Isothermal surface charts: metric, conformal factor and chart constants.

mod constants;
mod factor;
mod patch;

pub use constants::{
    chart_constants, conformality_residual, metric_tensor, ChartConstants, Metric, ISOTHERMAL_TOL,
};
pub use factor::{conformal_factor, weighted_energy, ConformalFactor, DOMAIN_SLACK};
pub use patch::{PatchJet, SurfacePatch};
