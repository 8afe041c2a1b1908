//! Quasiconformality and regularity diagnostics on sampled fields.

mod beltrami;
mod collar;
mod component;
mod composition;
mod gradient_chain;
mod poisson_fit;

pub use beltrami::{beltrami, beltrami_in, beltrami_of_map, BeltramiField, DEGENERACY_FLOOR};
pub use collar::{
    bilipschitz_probe, collar_profile, BilipschitzReport, Collar, CollarProfile, CollarVerdict,
    BILIPSCHITZ_FLOOR, PLATEAU_SPREAD,
};
pub use component::{check_component_inequality, ComponentReport};
pub use composition::{composition_laplacian_check, CompositionReport};
pub use gradient_chain::{verify_gradient_chain, GradientChainReport, CHAIN_TOL};
pub use poisson_fit::{fit_poisson_constants, m_sweep, PoissonFit};
