//! Red–black SOR for the five-point Dirichlet problem with Shortley–Weller
//! arms at boundary nodes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::boundary::BoundaryData;
use crate::error::{Error, Result};
use crate::field::{Direction, DiskGrid};

/// Sweep cap for a single linear solve.
pub const MAX_SWEEPS: usize = 200_000;
const CHECK_EVERY: usize = 8;
const STALL_CHECKS: usize = 16;

#[derive(Clone, Copy, Debug)]
struct Row {
    node: usize,
    /// Neighbour node and weight; `usize::MAX` marks an unused slot.
    nbrs: [(usize, f64); 4],
    weight_sum: f64,
    /// `Σ w_k g_k` over boundary crossings.
    dirichlet: Complex64,
}

/// Assembled Dirichlet system on the active nodes of a grid.
#[derive(Clone, Debug)]
pub struct DirichletSystem {
    rows: Vec<Row>,
    colors: [Vec<usize>; 2],
    h: f64,
    omega: f64,
    n_nodes: usize,
    data_min: Complex64,
    data_max: Complex64,
}

/// Linear-solve record.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SorOutcome {
    pub sweeps: usize,
    pub residual: f64,
}

impl DirichletSystem {
    pub fn new(grid: &DiskGrid, data: &BoundaryData) -> Self {
        let h = grid.h();
        let mut rows = Vec::with_capacity(grid.active_nodes().len());
        let mut colors = [Vec::new(), Vec::new()];
        let mut data_min = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut data_max = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &idx in grid.active_nodes() {
            let arms = grid.arms(idx);
            let arm_len = |d: Direction| -> Option<(f64, Complex64)> {
                arms.iter()
                    .find(|a| a.direction == d)
                    .map(|a| (a.fraction * h, data.eval(a.param)))
            };
            let mut nbrs = [(usize::MAX, 0.0); 4];
            let mut weight_sum = 0.0;
            let mut dirichlet = Complex64::new(0.0, 0.0);
            for (slot, (plus, minus)) in [
                (Direction::East, Direction::West),
                (Direction::North, Direction::South),
            ]
            .into_iter()
            .enumerate()
            {
                let p = arm_len(plus);
                let m = arm_len(minus);
                let hp = p.map_or(h, |a| a.0);
                let hm = m.map_or(h, |a| a.0);
                let wp = 2.0 / (hp * (hp + hm));
                let wm = 2.0 / (hm * (hp + hm));
                weight_sum += wp + wm;
                for (k, (dir, arm, w)) in [(plus, p, wp), (minus, m, wm)].into_iter().enumerate() {
                    match arm {
                        Some((_, g)) => {
                            dirichlet += g * w;
                            data_min = Complex64::new(data_min.re.min(g.re), data_min.im.min(g.im));
                            data_max = Complex64::new(data_max.re.max(g.re), data_max.im.max(g.im));
                        }
                        None => {
                            nbrs[2 * slot + k] = (grid.neighbor(idx, dir).expect("active node"), w)
                        }
                    }
                }
            }
            let (i, j) = grid.ij(idx);
            colors[(i + j) % 2].push(rows.len());
            rows.push(Row {
                node: idx,
                nbrs,
                weight_sum,
                dirichlet,
            });
        }
        let (lo, hi) = grid.domain().boundary.bounding_box();
        let extent = (hi.re - lo.re).max(hi.im - lo.im);
        let omega = 2.0 / (1.0 + (PI * h / extent).sin());
        DirichletSystem {
            rows,
            colors,
            h,
            omega,
            n_nodes: grid.len(),
            data_min,
            data_max,
        }
    }

    /// Componentwise range of the Dirichlet values at the boundary crossings.
    pub fn data_range(&self) -> (Complex64, Complex64) {
        (self.data_min, self.data_max)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    fn gauss_seidel_value(&self, row: &Row, u: &[Complex64], rhs: &[Complex64]) -> Complex64 {
        let mut acc = row.dirichlet;
        for &(k, w) in &row.nbrs {
            if k != usize::MAX {
                acc += u[k] * w;
            }
        }
        (acc - rhs[row.node]) / row.weight_sum
    }

    /// Residual of `L_h u = rhs` at every active node, scaled so interior
    /// rows read as the plain five-point residual.
    pub fn residuals(&self, u: &[Complex64], rhs: &[Complex64]) -> Vec<(usize, Complex64)> {
        let scale = 4.0 / (self.h * self.h);
        self.rows
            .iter()
            .map(|row| {
                (
                    row.node,
                    (self.gauss_seidel_value(row, u, rhs) - u[row.node]) * scale,
                )
            })
            .collect()
    }

    pub fn residual(&self, u: &[Complex64], rhs: &[Complex64]) -> f64 {
        self.residuals(u, rhs)
            .iter()
            .map(|(_, r)| r.norm())
            .fold(0.0, f64::max)
    }

    /// Iterates on `u` in place until the scaled residual drops to `tol`.
    pub fn solve(&self, u: &mut [Complex64], rhs: &[Complex64], tol: f64) -> Result<SorOutcome> {
        debug_assert_eq!(u.len(), self.n_nodes);
        let mut residual = self.residual(u, rhs);
        let mut sweeps = 0;
        let mut omega = self.omega;
        let mut best = residual;
        let mut stalled = 0;
        while residual > tol {
            if sweeps >= MAX_SWEEPS || !residual.is_finite() {
                return Err(Error::Convergence {
                    what: "SOR sweep",
                    iterations: sweeps,
                    residual,
                    history: vec![residual],
                });
            }
            for _ in 0..CHECK_EVERY {
                for color in &self.colors {
                    for &r in color {
                        let row = &self.rows[r];
                        let gs = self.gauss_seidel_value(row, u, rhs);
                        let old = u[row.node];
                        u[row.node] = old + (gs - old) * omega;
                    }
                }
            }
            sweeps += CHECK_EVERY;
            residual = self.residual(u, rhs);
            if residual < best {
                best = residual;
                stalled = 0;
            } else {
                stalled += 1;
            }
            // Near the rounding floor over-relaxation amplifies noise; fall back toward Gauss–Seidel.
            if stalled >= STALL_CHECKS {
                omega = 1.0 + (omega - 1.0) * 0.5;
                stalled = 0;
            }
        }
        Ok(SorOutcome { sweeps, residual })
    }
}
