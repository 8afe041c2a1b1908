//! Masked structured grids, sampled fields and finite-difference Wirtinger calculus.

mod calculus;
mod export;
mod grid;
mod values;

pub(crate) use calculus::{axis_derivative, weighted_dirichlet_energy};
pub use calculus::{
    dirichlet_energy, dirichlet_energy_vector, gradient_norm_sq, laplacian, operator_norm,
    partials, wirtinger_derivatives,
};
pub use export::{write_field_csv, write_real_csv};
pub use grid::{Arm, Direction, DiskGrid, NodeKind, MIN_NODES};
pub use values::{ComplexField, Linear, NodeField, RealField, Support, VectorField};
