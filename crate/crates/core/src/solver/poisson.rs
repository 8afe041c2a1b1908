use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::boundary::BoundaryData;
use crate::conformal_plane::{wrap_angle, PlaneMap};
use crate::error::{Error, Result};
use crate::field::{ComplexField, DiskGrid, Support};

/// Harmonic extension of circle data as `Σ a_k z^k + Σ b_k zbar^k`,
/// built from the discrete Fourier coefficients of equispaced samples.
#[derive(Clone, Debug)]
pub struct HarmonicExtension {
    holo: Vec<Complex64>,
    anti: Vec<Complex64>,
    samples: usize,
}

/// Trailing coefficients below this fraction of the largest are rounding
/// noise and are dropped.
const TRIM: f64 = 2e-16;

impl HarmonicExtension {
    pub fn from_boundary(data: &BoundaryData, samples: usize) -> Result<Self> {
        if samples < 8 {
            return Err(Error::Parameter(format!(
                "need at least 8 boundary samples, got {samples}"
            )));
        }
        let mut buf: Vec<Complex64> = (0..samples)
            .map(|j| data.eval(wrap_angle(2.0 * PI * j as f64 / samples as f64)))
            .collect();
        if buf.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Parameter("boundary data is not finite".into()));
        }
        FftPlanner::new()
            .plan_fft_forward(samples)
            .process(&mut buf);
        let scale = 1.0 / samples as f64;
        let half = samples / 2;
        let mut holo: Vec<Complex64> = (0..=half).map(|k| buf[k] * scale).collect();
        let mut anti: Vec<Complex64> = (0..=half)
            .map(|k| {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    buf[samples - k] * scale
                }
            })
            .collect();
        if samples.is_multiple_of(2) {
            holo[half] *= 0.5;
            anti[half] = holo[half];
        }
        let peak = holo
            .iter()
            .chain(anti.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let trim = |v: &mut Vec<Complex64>| {
            while v.len() > 1 && v.last().is_some_and(|c| c.norm() <= TRIM * peak) {
                v.pop();
            }
        };
        trim(&mut holo);
        trim(&mut anti);
        Ok(HarmonicExtension {
            holo,
            anti,
            samples,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Number of retained modes on each side.
    pub fn modes(&self) -> (usize, usize) {
        (self.holo.len(), self.anti.len())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.holo, z) + horner(&self.anti, z.conj())
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

impl PlaneMap for HarmonicExtension {
    fn value(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }

    fn defined_at(&self, z: Complex64) -> bool {
        z.norm() <= 1.0
    }
}

/// Poisson extension sampled on a unit-disk grid.
#[derive(Clone, Debug)]
pub struct PoissonExtension {
    pub field: ComplexField,
    pub extension: HarmonicExtension,
    /// Fewer than `4n` boundary samples were used.
    pub undersampled: bool,
}

/// Default sample count: a power of two with spacing well below `h`.
pub fn default_samples(n: usize) -> usize {
    (32 * n).next_power_of_two()
}

/// Harmonic extension of circle data to every active node of a unit-disk grid.
pub fn poisson_extension(
    data: &BoundaryData,
    grid: &Arc<DiskGrid>,
    samples: usize,
) -> Result<PoissonExtension> {
    if !grid.domain().is_unit_disk() {
        return Err(Error::Precondition(
            "Poisson extension needs a unit-disk grid".into(),
        ));
    }
    let extension = HarmonicExtension::from_boundary(data, samples)?;
    let active = grid.active_nodes();
    let vals: Vec<Complex64> = active
        .par_iter()
        .map(|&idx| extension.eval(grid.coord(idx)))
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (&idx, v) in active.iter().zip(vals) {
        values[idx] = v;
    }
    Ok(PoissonExtension {
        field: ComplexField::from_values(grid, Support::Active, values)?,
        extension,
        undersampled: samples < 4 * grid.n(),
    })
}

/// Trapezoidal Poisson-kernel quadrature at one interior point. Accurate
/// away from the circle; used as an independent check on the series.
pub fn poisson_kernel_quadrature(data: &BoundaryData, samples: usize, z: Complex64) -> Complex64 {
    let r2 = z.norm_sqr();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..samples {
        let t = wrap_angle(2.0 * PI * j as f64 / samples as f64);
        let kernel = (1.0 - r2) / (Complex64::from_polar(1.0, t) - z).norm_sqr();
        acc += data.eval(t) * kernel;
    }
    acc / samples as f64
}
