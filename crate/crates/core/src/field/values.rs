use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::DiskGrid;
use crate::error::{Error, Result};

/// Values a finite-difference stencil can combine.
pub trait Linear:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
}

impl Linear for f64 {}
impl Linear for Complex64 {}

/// Which nodes carry meaningful values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Interior and boundary nodes.
    Active,
    /// Interior nodes only (e.g. Laplacians).
    Interior,
}

/// Sampled field on a [`DiskGrid`]. Entries outside the support are zero
/// and never read.
#[derive(Clone, Debug)]
pub struct NodeField<T> {
    grid: Arc<DiskGrid>,
    support: Support,
    values: Vec<T>,
}

pub type ComplexField = NodeField<Complex64>;
pub type RealField = NodeField<f64>;

impl<T: Copy + Default> NodeField<T> {
    pub fn from_fn(grid: &Arc<DiskGrid>, mut f: impl FnMut(Complex64) -> T) -> Self {
        let mut values = vec![T::default(); grid.len()];
        for &idx in grid.active_nodes() {
            values[idx] = f(grid.coord(idx));
        }
        Self {
            grid: grid.clone(),
            support: Support::Active,
            values,
        }
    }

    pub(crate) fn from_parts(grid: Arc<DiskGrid>, support: Support, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid,
            support,
            values,
        }
    }

    /// Field from a dense vector of `n * n` values.
    pub fn from_values(grid: &Arc<DiskGrid>, support: Support, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid: grid.clone(),
            support,
            values,
        })
    }

    pub fn grid(&self) -> &Arc<DiskGrid> {
        &self.grid
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn nodes(&self) -> &[usize] {
        match self.support {
            Support::Active => self.grid.active_nodes(),
            Support::Interior => self.grid.interior_nodes(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn at(&self, idx: usize) -> T {
        self.values[idx]
    }

    /// `(node index, position, value)` over the support.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64, T)> + '_ {
        self.nodes()
            .iter()
            .map(move |&idx| (idx, self.grid.coord(idx), self.values[idx]))
    }

    pub fn map<U: Copy + Default>(&self, mut f: impl FnMut(T) -> U) -> NodeField<U> {
        let mut values = vec![U::default(); self.values.len()];
        for &idx in self.nodes() {
            values[idx] = f(self.values[idx]);
        }
        NodeField {
            grid: self.grid.clone(),
            support: self.support,
            values,
        }
    }

    pub fn same_grid<U>(&self, other: &NodeField<U>) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Pointwise combination over the intersection of both supports.
    pub fn zip_with<U: Copy + Default, V: Copy + Default>(
        &self,
        other: &NodeField<U>,
        mut f: impl FnMut(T, U) -> V,
    ) -> Result<NodeField<V>> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let support = if self.support == Support::Active && other.support == Support::Active {
            Support::Active
        } else {
            Support::Interior
        };
        let mut values = vec![V::default(); self.values.len()];
        let nodes = match support {
            Support::Active => self.grid.active_nodes(),
            Support::Interior => self.grid.interior_nodes(),
        };
        for &idx in nodes {
            values[idx] = f(self.values[idx], other.values[idx]);
        }
        Ok(NodeField {
            grid: self.grid.clone(),
            support,
            values,
        })
    }

    pub fn restrict_to_interior(&self) -> Self {
        Self {
            grid: self.grid.clone(),
            support: Support::Interior,
            values: self.values.clone(),
        }
    }
}

impl<T: Linear> NodeField<T> {
    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.zip_with(other, |x, y| x * a + y * b)
    }
}

impl ComplexField {
    pub fn max_abs(&self) -> f64 {
        self.iter().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexField) -> Result<f64> {
        Ok(self.zip_with(other, |a, b| (a - b).norm())?.max())
    }

    pub fn real_part(&self) -> RealField {
        self.map(|v| v.re)
    }

    pub fn imag_part(&self) -> RealField {
        self.map(|v| v.im)
    }

    pub fn all_finite(&self) -> bool {
        self.iter()
            .all(|(_, _, v)| v.re.is_finite() && v.im.is_finite())
    }

    /// Bilinear interpolation inside the active region; `None` when a
    /// surrounding node is exterior.
    pub fn interpolate(&self, z: Complex64) -> Option<Complex64> {
        let g = &self.grid;
        let origin = g.coord(0);
        let fx = (z.re - origin.re) / g.h();
        let fy = (z.im - origin.im) / g.h();
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (i, j) = (fx.floor() as usize, fy.floor() as usize);
        if i + 1 >= g.n() || j + 1 >= g.n() {
            return None;
        }
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        let corners = [
            g.index(i, j),
            g.index(i + 1, j),
            g.index(i, j + 1),
            g.index(i + 1, j + 1),
        ];
        let nodes = self.nodes();
        let supported = |idx: usize| nodes.binary_search(&idx).is_ok();
        let weights = [
            (1.0 - tx) * (1.0 - ty),
            tx * (1.0 - ty),
            (1.0 - tx) * ty,
            tx * ty,
        ];
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, w) in corners.iter().zip(weights) {
            if w == 0.0 {
                continue;
            }
            if !supported(*c) {
                return None;
            }
            acc += self.values[*c] * w;
        }
        Some(acc)
    }
}

impl RealField {
    pub fn max(&self) -> f64 {
        self.iter()
            .map(|(_, _, v)| v)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.iter().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min)
    }
}

/// Field with `dim` real components per node, for maps into `ℝˡ`.
#[derive(Clone, Debug)]
pub struct VectorField {
    grid: Arc<DiskGrid>,
    dim: usize,
    values: Vec<f64>,
}

impl VectorField {
    pub fn from_fn(
        grid: &Arc<DiskGrid>,
        dim: usize,
        mut f: impl FnMut(Complex64) -> Vec<f64>,
    ) -> Result<Self> {
        let mut values = vec![0.0; grid.len() * dim];
        for &idx in grid.active_nodes() {
            let v = f(grid.coord(idx));
            if v.len() != dim {
                return Err(Error::Parameter(format!(
                    "expected {dim} components, got {}",
                    v.len()
                )));
            }
            values[idx * dim..(idx + 1) * dim].copy_from_slice(&v);
        }
        Ok(Self {
            grid: grid.clone(),
            dim,
            values,
        })
    }

    pub fn grid(&self) -> &Arc<DiskGrid> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component `c` as a scalar field.
    pub fn component(&self, c: usize) -> RealField {
        let mut values = vec![0.0; self.grid.len()];
        for &idx in self.grid.active_nodes() {
            values[idx] = self.values[idx * self.dim + c];
        }
        NodeField::from_parts(self.grid.clone(), Support::Active, values)
    }
}
