//! Planar Jordan domains and conformal maps of the unit disk onto them.

mod bounds;
mod domain;
mod maps;
mod theodorsen;

pub use bounds::{derivative_bounds, DerivativeBounds};
pub(crate) use domain::{apply as apply_matrix, wrap_angle};
pub use domain::{Boundary, PlanarDomain, Smoothness};
pub use maps::{ConformalMap, FnMap, MapSource, Mobius, PlaneMap};
pub use theodorsen::{theodorsen_map, TheodorsenMap, CORRESPONDENCE_TOL, MAX_SWEEPS};
