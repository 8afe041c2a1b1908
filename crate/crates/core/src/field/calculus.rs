use num_complex::Complex64;

use super::grid::{Direction, DiskGrid};
use super::values::{ComplexField, Linear, NodeField, RealField, Support, VectorField};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// First derivative along one axis: central where both neighbours are
/// active, second-order one-sided otherwise.
pub(crate) fn axis_derivative<T: Linear>(
    grid: &DiskGrid,
    values: &[T],
    idx: usize,
    plus: Direction,
    minus: Direction,
) -> Result<T> {
    let inv = 0.5 / grid.h();
    let active = |k: Option<usize>| k.filter(|&k| grid.is_active(k));
    let p = active(grid.neighbor(idx, plus));
    let m = active(grid.neighbor(idx, minus));
    match (p, m) {
        (Some(p), Some(m)) => Ok((values[p] - values[m]) * inv),
        (None, Some(m)) => match active(grid.neighbor(m, minus)) {
            Some(m2) => Ok((values[idx] * 3.0 - values[m] * 4.0 + values[m2]) * inv),
            None => Err(stencil_error(grid, idx)),
        },
        (Some(p), None) => match active(grid.neighbor(p, plus)) {
            Some(p2) => Ok((values[p] * 4.0 - values[idx] * 3.0 - values[p2]) * inv),
            None => Err(stencil_error(grid, idx)),
        },
        (None, None) => Err(stencil_error(grid, idx)),
    }
}

fn stencil_error(grid: &DiskGrid, idx: usize) -> Error {
    let (i, j) = grid.ij(idx);
    Error::Stencil { i, j }
}

fn require_active<T>(f: &NodeField<T>) -> Result<()>
where
    T: Copy + Default,
{
    if f.support() != Support::Active {
        return Err(Error::Precondition(
            "derivatives need values on boundary nodes".into(),
        ));
    }
    Ok(())
}

/// `(f_x, f_y)` on every active node.
pub fn partials<T: Linear>(f: &NodeField<T>) -> Result<(NodeField<T>, NodeField<T>)> {
    require_active(f)?;
    let grid = f.grid();
    let mut fx = vec![T::default(); grid.len()];
    let mut fy = vec![T::default(); grid.len()];
    for &idx in grid.active_nodes() {
        fx[idx] = axis_derivative(grid, f.values(), idx, Direction::East, Direction::West)?;
        fy[idx] = axis_derivative(grid, f.values(), idx, Direction::North, Direction::South)?;
    }
    Ok((
        NodeField::from_parts(grid.clone(), Support::Active, fx),
        NodeField::from_parts(grid.clone(), Support::Active, fy),
    ))
}

/// `(f_z, f_zbar)` with `f_z = (f_x - i f_y)/2`, `f_zbar = (f_x + i f_y)/2`.
pub fn wirtinger_derivatives(f: &ComplexField) -> Result<(ComplexField, ComplexField)> {
    let (fx, fy) = partials(f)?;
    Ok((
        fx.zip_with(&fy, |a, b| (a - I * b) * 0.5)?,
        fx.zip_with(&fy, |a, b| (a + I * b) * 0.5)?,
    ))
}

/// Five-point Laplacian on interior nodes.
pub fn laplacian<T: Linear>(f: &NodeField<T>) -> Result<NodeField<T>> {
    require_active(f)?;
    let grid = f.grid();
    let v = f.values();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let mut out = vec![T::default(); grid.len()];
    for &idx in grid.interior_nodes() {
        let mut acc = v[idx] * -4.0;
        for d in Direction::ALL {
            acc = acc + v[grid.neighbor(idx, d).expect("interior node")];
        }
        out[idx] = acc * inv_h2;
    }
    Ok(NodeField::from_parts(grid.clone(), Support::Interior, out))
}

/// Hilbert–Schmidt gradient norm `|∇f|² = |f_x|² + |f_y|² = 2(|f_z|² + |f_zbar|²)`.
pub fn gradient_norm_sq(f: &ComplexField) -> Result<RealField> {
    let (fz, fzbar) = wirtinger_derivatives(f)?;
    fz.zip_with(&fzbar, |a, b| 2.0 * (a.norm_sqr() + b.norm_sqr()))
}

/// Operator norm of the differential, `|f_z| + |f_zbar|`.
pub fn operator_norm(f: &ComplexField) -> Result<RealField> {
    let (fz, fzbar) = wirtinger_derivatives(f)?;
    fz.zip_with(&fzbar, |a, b| a.norm() + b.norm())
}

/// Dirichlet energy `∬ |f_x|² + |f_y|²` by midpoint quadrature over grid
/// cells, with cut cells weighted by their area fraction inside the domain.
pub fn dirichlet_energy(f: &ComplexField) -> Result<f64> {
    let (fx, fy) = partials(f)?;
    let nodal = |idx: usize| fx.at(idx).norm_sqr() + fy.at(idx).norm_sqr();
    let h = f.grid().h();
    let v = f.values();
    let cell = |c: [usize; 4]| {
        let (dx, dy) = cell_partials(v, c, h);
        dx.norm_sqr() + dy.norm_sqr()
    };
    cell_quadrature(f.grid(), nodal, cell)
}

/// Dirichlet energy of a map into `ℝˡ`.
pub fn dirichlet_energy_vector(f: &VectorField) -> Result<f64> {
    (0..f.dim())
        .map(|c| {
            let comp = f.component(c);
            let (fx, fy) = partials(&comp)?;
            let h = f.grid().h();
            let v = comp.values();
            let nodal = |idx: usize| fx.at(idx).powi(2) + fy.at(idx).powi(2);
            let cell = |c: [usize; 4]| {
                let (dx, dy) = cell_partials(v, c, h);
                dx * dx + dy * dy
            };
            cell_quadrature(f.grid(), nodal, cell)
        })
        .sum()
}

/// Energy with the integrand weighted by `weight(f)` evaluated on the field values.
pub(crate) fn weighted_dirichlet_energy(
    f: &ComplexField,
    weight: impl Fn(Complex64) -> Result<f64>,
) -> Result<f64> {
    let (fx, fy) = partials(f)?;
    let grid = f.grid();
    let v = f.values();
    let mut nodal_w = vec![0.0; grid.len()];
    for &idx in grid.active_nodes() {
        nodal_w[idx] = weight(v[idx])?;
    }
    let h = grid.h();
    let mut failure = None;
    let energy = {
        let nodal = |idx: usize| nodal_w[idx] * (fx.at(idx).norm_sqr() + fy.at(idx).norm_sqr());
        let cell = |c: [usize; 4]| {
            let (dx, dy) = cell_partials(v, c, h);
            let mid = (v[c[0]] + v[c[1]] + v[c[2]] + v[c[3]]) * 0.25;
            match weight(mid) {
                Ok(w) => w * (dx.norm_sqr() + dy.norm_sqr()),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        };
        cell_quadrature(grid, nodal, cell)?
    };
    match failure {
        Some(e) => Err(e),
        None => Ok(energy),
    }
}

/// Cell-centred partials from the four corners `[00, 10, 01, 11]`.
fn cell_partials<T: Linear>(v: &[T], c: [usize; 4], h: f64) -> (T, T) {
    let inv = 0.5 / h;
    let dx = ((v[c[1]] - v[c[0]]) + (v[c[3]] - v[c[2]])) * inv;
    let dy = ((v[c[2]] - v[c[0]]) + (v[c[3]] - v[c[1]])) * inv;
    (dx, dy)
}

const SUBSAMPLES: usize = 8;

fn cell_quadrature(
    grid: &DiskGrid,
    nodal: impl Fn(usize) -> f64,
    mut cell: impl FnMut([usize; 4]) -> f64,
) -> Result<f64> {
    if grid.interior_nodes().is_empty() {
        return Err(Error::EmptyInterior);
    }
    let n = grid.n();
    let h = grid.h();
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let c = [
                grid.index(i, j),
                grid.index(i + 1, j),
                grid.index(i, j + 1),
                grid.index(i + 1, j + 1),
            ];
            let active: Vec<usize> = c.iter().copied().filter(|&k| grid.is_active(k)).collect();
            let term = match active.len() {
                0 => continue,
                4 => cell(c),
                _ => {
                    let frac = inside_fraction(grid, c[0]);
                    let avg = active.iter().map(|&k| nodal(k)).sum::<f64>() / active.len() as f64;
                    frac * avg
                }
            } * h
                * h;
            // Kahan summation keeps the total independent of cell count drift.
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    Ok(sum)
}

fn inside_fraction(grid: &DiskGrid, corner: usize) -> f64 {
    let origin = grid.coord(corner);
    let step = grid.h() / SUBSAMPLES as f64;
    let mut count = 0;
    for a in 0..SUBSAMPLES {
        for b in 0..SUBSAMPLES {
            let p = origin + Complex64::new((a as f64 + 0.5) * step, (b as f64 + 0.5) * step);
            if grid.domain().contains(p) {
                count += 1;
            }
        }
    }
    count as f64 / (SUBSAMPLES * SUBSAMPLES) as f64
}
