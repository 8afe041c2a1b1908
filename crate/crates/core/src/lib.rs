//! Numerical laboratory for quasiconformal harmonic maps.
//!
//! The crate solves the harmonic and ρ-harmonic map equations on masked
//! structured grids over planar Jordan domains, and measures the quantities
//! that govern boundary regularity of quasiconformal solutions: Beltrami
//! dilatations, Poisson differential inequality constants
//! `|Δf| ≤ M|∇f|² + N`, conformal factors of isothermal surface charts and
//! gradient profiles over boundary collars.
//!
//! Module map:
//!
//! * [`field`]: grids, sampled fields, Wirtinger calculus, energy quadrature.
//! * [`surface_chart`]: isothermal surface patches, conformal factors, chart constants.
//! * [`conformal_plane`]: planar domains, conformal maps of the disk, Theodorsen solver.
//! * [`solver`]: Poisson extension, Laplace, ρ-harmonic and quasilinear elliptic solvers.
//! * [`diagnostics`]: quasiconformality and regularity instrumentation.
//! * [`scenario`]: config-driven experiment runner behind the `qclab` binary.

// `!(x > y)` comparisons deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformal_plane;
pub mod diagnostics;
pub mod error;
pub mod field;
pub mod scenario;
pub mod solver;
pub mod surface_chart;

pub use error::{Error, Result};
pub use num_complex::Complex64;
