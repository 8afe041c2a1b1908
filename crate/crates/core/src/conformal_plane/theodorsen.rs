//! Conformal maps of the unit disk onto star-shaped domains by Theodorsen's
//! method.
//!
//! For a boundary `r(θ)e^{iθ}` the map is written `ω(z) = z·exp(S(z))` with
//! `S` holomorphic. On the circle `S = log r(θ(φ)) + i(θ(φ) − φ)`, so the
//! boundary correspondence solves the fixed point
//! `θ(φ) = φ + K[log r(θ(φ))]` with `K` the periodic conjugate-function
//! operator. `K` is applied spectrally; the zero-mean conjugate fixes
//! `ω(0) = 0` and `ω'(0) > 0`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::domain::{PlanarDomain, Smoothness};
use super::maps::ConformalMap;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 500;
pub const CORRESPONDENCE_TOL: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct TheodorsenMap {
    n_modes: usize,
    /// Taylor coefficients of `S(z) = log(ω(z)/z)`.
    coeffs: Vec<Complex64>,
    /// `θ(φ_j)` at `φ_j = 2πj/n_modes`.
    correspondence: Vec<f64>,
    residual: f64,
    history: Vec<f64>,
    analyticity_defect: f64,
    #[serde(skip)]
    smoothness: Smoothness,
}

impl TheodorsenMap {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Boundary correspondence samples `θ(φ_j)`.
    pub fn correspondence(&self) -> &[f64] {
        &self.correspondence
    }

    /// Self-consistency residual `max |θ − φ − K[log r(θ)]|`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Sweep-to-sweep correspondence updates.
    pub fn history(&self) -> &[f64] {
        &self.history
    }

    /// Largest negative-frequency coefficient of the boundary values of `S`.
    pub fn analyticity_defect(&self) -> f64 {
        self.analyticity_defect
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.correspondence.len();
        (0..n).all(|j| {
            let next = if j + 1 < n {
                self.correspondence[j + 1]
            } else {
                self.correspondence[0] + 2.0 * PI
            };
            next > self.correspondence[j]
        })
    }

    /// `(S, S', S'')` by Horner's rule.
    fn series(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut s, mut ds, mut dds) = (zero, zero, zero);
        for c in self.coeffs.iter().rev() {
            dds = dds * z + 2.0 * ds;
            ds = ds * z + s;
            s = s * z + c;
        }
        (s, ds, dds)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        z * self.series(z).0.exp()
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let (s, ds, _) = self.series(z);
        s.exp() * (1.0 + z * ds)
    }

    pub fn second(&self, z: Complex64) -> Complex64 {
        let (s, ds, dds) = self.series(z);
        s.exp() * (2.0 * ds + z * ds * ds + z * dds)
    }
}

/// Conformal map of the unit disk onto a star-shaped domain given as a
/// polar graph about the origin, on `n_modes` (a power of two) samples.
pub fn theodorsen_map(domain: &PlanarDomain, n_modes: usize) -> Result<ConformalMap> {
    if !n_modes.is_power_of_two() || n_modes < 8 {
        return Err(Error::Parameter(format!(
            "n_modes must be a power of two >= 8, got {n_modes}"
        )));
    }
    let radius = domain.boundary.polar_graph().ok_or_else(|| {
        Error::Parameter("Theodorsen's method needs a polar-graph boundary about 0".into())
    })?;

    let n = n_modes;
    let phi: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    let mut theta = phi.clone();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let conjugate = |values: &[f64]| -> Vec<f64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fwd.process(&mut buf);
        for (m, c) in buf.iter_mut().enumerate() {
            *c = if m == 0 || m == n / 2 {
                Complex64::new(0.0, 0.0)
            } else if m < n / 2 {
                *c * Complex64::new(0.0, -1.0)
            } else {
                *c * Complex64::new(0.0, 1.0)
            };
        }
        inv.process(&mut buf);
        buf.iter().map(|c| c.re / n as f64).collect()
    };

    let mut history = Vec::new();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let log_r: Vec<f64> = theta.iter().map(|&t| radius(t).0.ln()).collect();
        let shift = conjugate(&log_r);
        let mut change: f64 = 0.0;
        for j in 0..n {
            let next = phi[j] + shift[j];
            change = change.max((next - theta[j]).abs());
            theta[j] = next;
        }
        history.push(change);
        if !change.is_finite() || change > 10.0 {
            break;
        }
        if change <= CORRESPONDENCE_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "Theodorsen iteration",
            iterations: history.len(),
            residual: history.last().copied().unwrap_or(f64::NAN),
            history,
        });
    }

    let log_r: Vec<f64> = theta.iter().map(|&t| radius(t).0.ln()).collect();
    let shift = conjugate(&log_r);
    let residual = (0..n)
        .map(|j| (theta[j] - phi[j] - shift[j]).abs())
        .fold(0.0, f64::max);

    let mut boundary: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(log_r[j], theta[j] - phi[j]))
        .collect();
    fwd.process(&mut boundary);
    let coeffs: Vec<Complex64> = boundary[..n / 2].iter().map(|c| c / n as f64).collect();
    let analyticity_defect = boundary[n / 2 + 1..]
        .iter()
        .map(|c| c.norm() / n as f64)
        .fold(0.0, f64::max);

    let map = TheodorsenMap {
        n_modes,
        coeffs,
        correspondence: theta,
        residual,
        history,
        analyticity_defect,
        smoothness: domain.smoothness,
    };
    if !map.is_monotone() {
        return Err(Error::Contract(
            "boundary correspondence is not monotone".into(),
        ));
    }
    Ok(ConformalMap::Theodorsen(Arc::new(map)))
}
