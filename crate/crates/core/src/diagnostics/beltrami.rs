use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{wirtinger_derivatives, ComplexField, DiskGrid, Support};
use crate::solver::SmoothMap;

/// Relative floor on `|f_z|` below which a node counts as degenerate.
pub const DEGENERACY_FLOOR: f64 = 1e-8;

/// `μ = f_zbar / f_z` on interior nodes with the dilatation bound `k`.
#[derive(Clone, Debug, Serialize)]
pub struct BeltramiField {
    #[serde(skip)]
    pub mu: ComplexField,
    pub k: f64,
    pub degenerate_count: usize,
    pub nodes: usize,
    /// Absolute `|f_z|` floor used.
    pub floor: f64,
}

impl BeltramiField {
    pub fn is_quasiconformal(&self) -> bool {
        self.k < 1.0 && self.degenerate_count == 0
    }
}

/// Beltrami coefficient over all interior nodes.
pub fn beltrami(f: &ComplexField) -> Result<BeltramiField> {
    beltrami_in(f, |_| true)
}

/// Beltrami coefficient over interior nodes whose coordinate satisfies `region`.
pub fn beltrami_in(f: &ComplexField, region: impl Fn(Complex64) -> bool) -> Result<BeltramiField> {
    let (fz, fzbar) = wirtinger_derivatives(f)?;
    let grid = f.grid();
    let nodes: Vec<usize> = grid
        .interior_nodes()
        .iter()
        .copied()
        .filter(|&i| region(grid.coord(i)))
        .collect();
    assemble(grid, &nodes, |i| (fz.at(i), fzbar.at(i)))
}

/// Beltrami coefficient from closed-form derivatives of a map, sampled on
/// the grid's interior nodes.
pub fn beltrami_of_map(map: &dyn SmoothMap, grid: &Arc<DiskGrid>) -> Result<BeltramiField> {
    let nodes = grid.interior_nodes().to_vec();
    assemble(grid, &nodes, |i| {
        let z = grid.coord(i);
        (map.dz(z), map.dzbar(z))
    })
}

fn assemble(
    grid: &Arc<DiskGrid>,
    nodes: &[usize],
    derivs: impl Fn(usize) -> (Complex64, Complex64),
) -> Result<BeltramiField> {
    if nodes.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let d: Vec<(Complex64, Complex64)> = nodes.iter().map(|&i| derivs(i)).collect();
    let mean_sq = d
        .iter()
        .map(|(a, b)| 2.0 * (a.norm_sqr() + b.norm_sqr()))
        .sum::<f64>()
        / d.len() as f64;
    let floor = DEGENERACY_FLOOR * mean_sq.sqrt();
    let mut mu = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut k: f64 = 0.0;
    let mut degenerate = 0;
    for (&idx, &(a, b)) in nodes.iter().zip(&d) {
        if !(a.norm() > floor) {
            degenerate += 1;
            continue;
        }
        mu[idx] = b / a;
        k = k.max(mu[idx].norm());
    }
    if degenerate == nodes.len() {
        return Err(Error::Precondition(
            "every node is degenerate (f_z vanishes)".into(),
        ));
    }
    Ok(BeltramiField {
        mu: ComplexField::from_values(grid, Support::Interior, mu)?,
        k,
        degenerate_count: degenerate,
        nodes: nodes.len(),
        floor,
    })
}
