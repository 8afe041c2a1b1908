use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position and derivatives up to second order of a patch at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchJet {
    pub x: Vec<f64>,
    pub xu: Vec<f64>,
    pub xv: Vec<f64>,
    pub xuu: Vec<f64>,
    pub xuv: Vec<f64>,
    pub xvv: Vec<f64>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Closed-form catalog of parametrized surface patches `X: 𝕌̄ → ℝˡ`.
///
/// All entries except [`SurfacePatch::ParaboloidGraph`] are isothermal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfacePatch {
    Flat,
    ScaledFlat {
        scale: f64,
    },
    /// `X(w) = radius · σ(scale · w)` with `σ` inverse stereographic projection.
    SphereCap {
        radius: f64,
        scale: f64,
    },
    /// Isometric unrolling of a circular cylinder.
    Cylinder {
        radius: f64,
    },
    Catenoid {
        scale: f64,
    },
    /// `X(w) = E(scale · w)` with `E` Enneper's minimal surface.
    Enneper {
        scale: f64,
    },
    /// Clifford torus piece in `ℝ⁴`.
    FlatTorus,
    /// Graph of `u² + v²`; not isothermal.
    ParaboloidGraph,
}

impl SurfacePatch {
    pub const NAMES: [&'static str; 8] = [
        "catenoid",
        "cylinder",
        "enneper",
        "flat",
        "flat_torus",
        "paraboloid_graph",
        "scaled_flat",
        "sphere_cap",
    ];

    /// Catalog lookup by name with positional parameters; missing
    /// parameters take their defaults.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let p = |k: usize, default: f64| params.get(k).copied().unwrap_or(default);
        let max_params = match name {
            "flat" | "flat_torus" | "paraboloid_graph" => 0,
            "scaled_flat" | "cylinder" | "catenoid" | "enneper" => 1,
            "sphere_cap" => 2,
            _ => return Err(Error::Config(format!("unknown surface `{name}`"))),
        };
        if params.len() > max_params {
            return Err(Error::Config(format!(
                "surface `{name}` takes at most {max_params} parameters"
            )));
        }
        let patch = match name {
            "flat" => SurfacePatch::Flat,
            "scaled_flat" => SurfacePatch::ScaledFlat { scale: p(0, 1.0) },
            "sphere_cap" => SurfacePatch::SphereCap {
                radius: p(0, 1.0),
                scale: p(1, 1.0),
            },
            "cylinder" => SurfacePatch::Cylinder { radius: p(0, 1.0) },
            "catenoid" => SurfacePatch::Catenoid { scale: p(0, 1.0) },
            "enneper" => SurfacePatch::Enneper { scale: p(0, 0.5) },
            "flat_torus" => SurfacePatch::FlatTorus,
            _ => SurfacePatch::ParaboloidGraph,
        };
        if params.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Config(format!(
                "surface `{name}` parameters must be positive"
            )));
        }
        Ok(patch)
    }

    pub fn name(&self) -> &'static str {
        match self {
            SurfacePatch::Flat => "flat",
            SurfacePatch::ScaledFlat { .. } => "scaled_flat",
            SurfacePatch::SphereCap { .. } => "sphere_cap",
            SurfacePatch::Cylinder { .. } => "cylinder",
            SurfacePatch::Catenoid { .. } => "catenoid",
            SurfacePatch::Enneper { .. } => "enneper",
            SurfacePatch::FlatTorus => "flat_torus",
            SurfacePatch::ParaboloidGraph => "paraboloid_graph",
        }
    }

    /// Ambient dimension `l`.
    pub fn dim(&self) -> usize {
        match self {
            SurfacePatch::FlatTorus => 4,
            _ => 3,
        }
    }

    pub fn point(&self, w: Complex64) -> Vec<f64> {
        self.jet(w).x
    }

    pub fn jet(&self, w: Complex64) -> PatchJet {
        let (u, v) = (w.re, w.im);
        match *self {
            SurfacePatch::Flat => flat_jet(u, v, 1.0),
            SurfacePatch::ScaledFlat { scale } => flat_jet(u, v, scale),
            SurfacePatch::SphereCap { radius, scale } => {
                let j = stereographic_jet(scale * u, scale * v);
                scaled(j, radius, scale)
            }
            SurfacePatch::Cylinder { radius } => {
                let (c, s) = ((u / radius).cos(), (u / radius).sin());
                PatchJet {
                    x: vec![radius * c, radius * s, v],
                    xu: vec![-s, c, 0.0],
                    xv: vec![0.0, 0.0, 1.0],
                    xuu: vec![-c / radius, -s / radius, 0.0],
                    xuv: vec![0.0; 3],
                    xvv: vec![0.0; 3],
                }
            }
            SurfacePatch::Catenoid { scale: a } => {
                let (c, s) = (u.cos(), u.sin());
                let (ch, sh) = (v.cosh(), v.sinh());
                PatchJet {
                    x: vec![a * ch * c, a * ch * s, a * v],
                    xu: vec![-a * ch * s, a * ch * c, 0.0],
                    xv: vec![a * sh * c, a * sh * s, a],
                    xuu: vec![-a * ch * c, -a * ch * s, 0.0],
                    xuv: vec![-a * sh * s, a * sh * c, 0.0],
                    xvv: vec![a * ch * c, a * ch * s, 0.0],
                }
            }
            SurfacePatch::Enneper { scale } => {
                let (u, v) = (scale * u, scale * v);
                let j = PatchJet {
                    x: vec![
                        u - u * u * u / 3.0 + u * v * v,
                        v - v * v * v / 3.0 + v * u * u,
                        u * u - v * v,
                    ],
                    xu: vec![1.0 - u * u + v * v, 2.0 * u * v, 2.0 * u],
                    xv: vec![2.0 * u * v, 1.0 - v * v + u * u, -2.0 * v],
                    xuu: vec![-2.0 * u, 2.0 * v, 2.0],
                    xuv: vec![2.0 * v, 2.0 * u, 0.0],
                    xvv: vec![2.0 * u, -2.0 * v, -2.0],
                };
                scaled(j, 1.0, scale)
            }
            SurfacePatch::FlatTorus => {
                let k = std::f64::consts::FRAC_1_SQRT_2;
                let (cu, su, cv, sv) = (u.cos(), u.sin(), v.cos(), v.sin());
                PatchJet {
                    x: vec![k * cu, k * su, k * cv, k * sv],
                    xu: vec![-k * su, k * cu, 0.0, 0.0],
                    xv: vec![0.0, 0.0, -k * sv, k * cv],
                    xuu: vec![-k * cu, -k * su, 0.0, 0.0],
                    xuv: vec![0.0; 4],
                    xvv: vec![0.0, 0.0, -k * cv, -k * sv],
                }
            }
            SurfacePatch::ParaboloidGraph => PatchJet {
                x: vec![u, v, u * u + v * v],
                xu: vec![1.0, 0.0, 2.0 * u],
                xv: vec![0.0, 1.0, 2.0 * v],
                xuu: vec![0.0, 0.0, 2.0],
                xuv: vec![0.0; 3],
                xvv: vec![0.0, 0.0, 2.0],
            },
        }
    }
}

fn flat_jet(u: f64, v: f64, scale: f64) -> PatchJet {
    PatchJet {
        x: vec![scale * u, scale * v, 0.0],
        xu: vec![scale, 0.0, 0.0],
        xv: vec![0.0, scale, 0.0],
        xuu: vec![0.0; 3],
        xuv: vec![0.0; 3],
        xvv: vec![0.0; 3],
    }
}

/// Jet of `outer · J(inner · w)` from the jet `J` evaluated at `inner · w`.
fn scaled(j: PatchJet, outer: f64, inner: f64) -> PatchJet {
    let s = |v: Vec<f64>, f: f64| v.into_iter().map(|x| x * f).collect::<Vec<_>>();
    PatchJet {
        x: s(j.x, outer),
        xu: s(j.xu, outer * inner),
        xv: s(j.xv, outer * inner),
        xuu: s(j.xuu, outer * inner * inner),
        xuv: s(j.xuv, outer * inner * inner),
        xvv: s(j.xvv, outer * inner * inner),
    }
}

/// `σ(u, v) = (2u, 2v, u² + v² − 1) / (1 + u² + v²)`.
fn stereographic_jet(u: f64, v: f64) -> PatchJet {
    let d = 1.0 + u * u + v * v;
    let (d2, d3) = (d * d, d * d * d);
    PatchJet {
        x: vec![2.0 * u / d, 2.0 * v / d, (d - 2.0) / d],
        xu: vec![2.0 / d - 4.0 * u * u / d2, -4.0 * u * v / d2, 4.0 * u / d2],
        xv: vec![-4.0 * u * v / d2, 2.0 / d - 4.0 * v * v / d2, 4.0 * v / d2],
        xuu: vec![
            -12.0 * u / d2 + 16.0 * u * u * u / d3,
            -4.0 * v / d2 + 16.0 * u * u * v / d3,
            4.0 / d2 - 16.0 * u * u / d3,
        ],
        xuv: vec![
            -4.0 * v / d2 + 16.0 * u * u * v / d3,
            -4.0 * u / d2 + 16.0 * u * v * v / d3,
            -16.0 * u * v / d3,
        ],
        xvv: vec![
            -4.0 * u / d2 + 16.0 * u * v * v / d3,
            -12.0 * v / d2 + 16.0 * v * v * v / d3,
            4.0 / d2 - 16.0 * v * v / d3,
        ],
    }
}
