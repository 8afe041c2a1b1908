use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declared boundary class of a planar domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    C1Alpha,
    C2Alpha,
}

/// `θ ↦ (r, r', r'')` for a polar-graph boundary.
pub type RadiusFn = Box<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;

/// Closed boundary curves with closed-form derivatives.
///
/// Every curve is parametrized by `t ∈ (-π, π]` and traversed counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Boundary {
    Circle {
        center: Complex64,
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// Star-shaped polar graph `r(θ) = c₀ + Σ_k (a_k cos kθ + b_k sin kθ)`,
    /// coefficients stored as `[c₀, a₁, b₁, a₂, b₂, ...]`.
    Polar {
        coeffs: Vec<f64>,
    },
    /// Image of another boundary under the linear map `z ↦ matrix · z`.
    Linear {
        matrix: [[f64; 2]; 2],
        inner: Box<Boundary>,
    },
}

impl Boundary {
    pub fn point(&self, t: f64) -> Complex64 {
        match self {
            Boundary::Circle { center, radius } => center + Complex64::from_polar(*radius, t),
            Boundary::Ellipse { a, b } => Complex64::new(a * t.cos(), b * t.sin()),
            Boundary::Polar { coeffs } => Complex64::from_polar(polar_radius(coeffs, t, 0), t),
            Boundary::Linear { matrix, inner } => apply(matrix, inner.point(t)),
        }
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        match self {
            Boundary::Circle { radius, .. } => Complex64::i() * Complex64::from_polar(*radius, t),
            Boundary::Ellipse { a, b } => Complex64::new(-a * t.sin(), b * t.cos()),
            Boundary::Polar { coeffs } => {
                let r = polar_radius(coeffs, t, 0);
                let dr = polar_radius(coeffs, t, 1);
                Complex64::new(dr, r) * Complex64::from_polar(1.0, t)
            }
            Boundary::Linear { matrix, inner } => apply(matrix, inner.tangent(t)),
        }
    }

    pub fn second(&self, t: f64) -> Complex64 {
        match self {
            Boundary::Circle { radius, .. } => -Complex64::from_polar(*radius, t),
            Boundary::Ellipse { a, b } => Complex64::new(-a * t.cos(), -b * t.sin()),
            Boundary::Polar { coeffs } => {
                let r = polar_radius(coeffs, t, 0);
                let dr = polar_radius(coeffs, t, 1);
                let ddr = polar_radius(coeffs, t, 2);
                Complex64::new(ddr - r, 2.0 * dr) * Complex64::from_polar(1.0, t)
            }
            Boundary::Linear { matrix, inner } => apply(matrix, inner.second(t)),
        }
    }

    /// Strict interior test.
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Boundary::Circle { center, radius } => (z - center).norm_sqr() < radius * radius,
            Boundary::Ellipse { a, b } => (z.re / a).powi(2) + (z.im / b).powi(2) < 1.0,
            Boundary::Polar { coeffs } => {
                if z == Complex64::new(0.0, 0.0) {
                    return true;
                }
                z.norm() < polar_radius(coeffs, z.arg(), 0)
            }
            Boundary::Linear { matrix, inner } => inner.contains(apply(&inverse(matrix), z)),
        }
    }

    /// Parameter of a point lying on the curve.
    pub fn param_on_curve(&self, z: Complex64) -> f64 {
        match self {
            Boundary::Circle { center, .. } => (z - center).arg(),
            Boundary::Ellipse { a, b } => (z.im / b).atan2(z.re / a),
            Boundary::Polar { .. } => z.arg(),
            Boundary::Linear { matrix, inner } => inner.param_on_curve(apply(&inverse(matrix), z)),
        }
    }

    /// Nearest boundary point: `(parameter, distance)`.
    pub fn nearest(&self, z: Complex64) -> (f64, f64) {
        if let Boundary::Circle { center, radius } = self {
            let d = z - center;
            return (d.arg(), (d.norm() - radius).abs());
        }
        const COARSE: usize = 512;
        let mut best = (0.0, f64::INFINITY);
        for k in 0..COARSE {
            let t = -PI + 2.0 * PI * (k as f64 + 0.5) / COARSE as f64;
            let d = (self.point(t) - z).norm();
            if d < best.1 {
                best = (t, d);
            }
        }
        // Newton on <γ(t) - z, γ'(t)> = 0 from the coarse minimizer.
        let mut t = best.0;
        for _ in 0..30 {
            let diff = self.point(t) - z;
            let d1 = self.tangent(t);
            let d2 = self.second(t);
            let g = diff.re * d1.re + diff.im * d1.im;
            let dg = d1.norm_sqr() + diff.re * d2.re + diff.im * d2.im;
            if dg <= 0.0 {
                break;
            }
            let step = (g / dg).clamp(-PI / COARSE as f64, PI / COARSE as f64);
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let d = (self.point(t) - z).norm();
        if d < best.1 {
            (wrap_angle(t), d)
        } else {
            best
        }
    }

    /// Winding number of the curve (sampled as a closed polygon) around `z`.
    pub fn winding_number(&self, z: Complex64, samples: usize) -> i64 {
        let mut total = 0.0;
        let mut prev = self.point(-PI) - z;
        for k in 1..=samples {
            let t = -PI + 2.0 * PI * k as f64 / samples as f64;
            let cur = self.point(t) - z;
            total += (cur / prev).arg();
            prev = cur;
        }
        (total / (2.0 * PI)).round() as i64
    }

    /// Axis-aligned bounding box `(min, max)` from dense sampling.
    pub fn bounding_box(&self) -> (Complex64, Complex64) {
        if let Boundary::Circle { center, radius } = self {
            let r = Complex64::new(*radius, *radius);
            return (center - r, center + r);
        }
        let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for k in 0..4096 {
            let p = self.point(-PI + 2.0 * PI * k as f64 / 4096.0);
            lo.re = lo.re.min(p.re);
            lo.im = lo.im.min(p.im);
            hi.re = hi.re.max(p.re);
            hi.im = hi.im.max(p.im);
        }
        (lo, hi)
    }

    /// Radius function `r(θ)` and its first two derivatives when the curve is
    /// a polar graph about the origin.
    pub fn polar_graph(&self) -> Option<RadiusFn> {
        match self {
            Boundary::Circle { center, radius } if center.norm() == 0.0 => {
                let r = *radius;
                Some(Box::new(move |_| (r, 0.0, 0.0)))
            }
            Boundary::Polar { coeffs } => {
                let c = coeffs.clone();
                Some(Box::new(move |t| {
                    (
                        polar_radius(&c, t, 0),
                        polar_radius(&c, t, 1),
                        polar_radius(&c, t, 2),
                    )
                }))
            }
            Boundary::Ellipse { a, b } => {
                let (a, b) = (*a, *b);
                Some(Box::new(move |t| ellipse_radius(a, b, t)))
            }
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Boundary::Circle { radius, .. } if *radius > 0.0 && radius.is_finite() => Ok(()),
            Boundary::Circle { radius, .. } => Err(Error::Parameter(format!(
                "circle radius must be positive, got {radius}"
            ))),
            Boundary::Ellipse { a, b } if *a > 0.0 && *b > 0.0 => Ok(()),
            Boundary::Ellipse { a, b } => Err(Error::Parameter(format!(
                "ellipse semi-axes must be positive, got ({a}, {b})"
            ))),
            Boundary::Polar { coeffs } => {
                if coeffs.is_empty() || coeffs.len() % 2 == 0 {
                    return Err(Error::Parameter(
                        "polar coefficients must be [c0, a1, b1, ..., ak, bk]".into(),
                    ));
                }
                let min_r = (0..2048)
                    .map(|k| polar_radius(coeffs, -PI + 2.0 * PI * k as f64 / 2048.0, 0))
                    .fold(f64::INFINITY, f64::min);
                if min_r > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Parameter(format!(
                        "polar radius must stay positive, min {min_r}"
                    )))
                }
            }
            Boundary::Linear { matrix, inner } => {
                let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
                if det <= 0.0 {
                    return Err(Error::Parameter(
                        "linear boundary map must be orientation preserving".into(),
                    ));
                }
                inner.validate()
            }
        }
    }
}

/// A planar Jordan domain: boundary curve plus its declared smoothness class.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarDomain {
    pub boundary: Boundary,
    pub smoothness: Smoothness,
}

impl PlanarDomain {
    pub fn new(boundary: Boundary, smoothness: Smoothness) -> Result<Self> {
        boundary.validate()?;
        Ok(Self {
            boundary,
            smoothness,
        })
    }

    pub fn unit_disk() -> Self {
        Self::disk(Complex64::new(0.0, 0.0), 1.0).expect("unit disk is valid")
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(Boundary::Circle { center, radius }, Smoothness::C2Alpha)
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::new(Boundary::Ellipse { a, b }, Smoothness::C2Alpha)
    }

    pub fn polar(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(Boundary::Polar { coeffs }, Smoothness::C2Alpha)
    }

    /// Image of this domain under an orientation-preserving linear map.
    pub fn transformed(&self, matrix: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(
            Boundary::Linear {
                matrix,
                inner: Box::new(self.boundary.clone()),
            },
            self.smoothness,
        )
    }

    pub fn is_unit_disk(&self) -> bool {
        matches!(self.boundary, Boundary::Circle { center, radius }
            if center == Complex64::new(0.0, 0.0) && radius == 1.0)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.boundary.contains(z)
    }
}

pub(crate) fn apply(m: &[[f64; 2]; 2], z: Complex64) -> Complex64 {
    Complex64::new(
        m[0][0] * z.re + m[0][1] * z.im,
        m[1][0] * z.re + m[1][1] * z.im,
    )
}

pub(crate) fn inverse(m: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ]
}

pub(crate) fn wrap_angle(t: f64) -> f64 {
    let mut t = (t + PI).rem_euclid(2.0 * PI) - PI;
    if t == -PI {
        t = PI;
    }
    t
}

fn polar_radius(coeffs: &[f64], t: f64, order: u32) -> f64 {
    let mut r = if order == 0 { coeffs[0] } else { 0.0 };
    for (k, pair) in coeffs[1..].chunks(2).enumerate() {
        let m = (k + 1) as f64;
        let (c, s) = ((m * t).cos(), (m * t).sin());
        let (a, b) = (pair[0], pair[1]);
        r += match order {
            0 => a * c + b * s,
            1 => m * (-a * s + b * c),
            _ => -m * m * (a * c + b * s),
        };
    }
    r
}

fn ellipse_radius(a: f64, b: f64, t: f64) -> (f64, f64, f64) {
    // r = ab / sqrt(q), q = b² cos²t + a² sin²t
    let (c, s) = (t.cos(), t.sin());
    let q = b * b * c * c + a * a * s * s;
    let dq = (a * a - b * b) * 2.0 * s * c;
    let ddq = (a * a - b * b) * 2.0 * (c * c - s * s);
    let r = a * b / q.sqrt();
    let dr = -0.5 * r * dq / q;
    let ddr = -0.5 * (dr * dq / q + r * ddq / q - r * dq * dq / (q * q));
    (r, dr, ddr)
}
