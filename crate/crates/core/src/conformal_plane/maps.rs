use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::domain::Smoothness;
use super::theodorsen::TheodorsenMap;
use crate::error::{Error, Result};

/// A map of the plane that can be sampled pointwise.
pub trait PlaneMap: Send + Sync {
    fn value(&self, z: Complex64) -> Complex64;

    /// Whether `z` lies where the map is defined.
    fn defined_at(&self, _z: Complex64) -> bool {
        true
    }
}

/// Adapter turning a closure into a [`PlaneMap`] on a region.
pub struct FnMap<F, D> {
    pub map: F,
    pub domain: D,
}

impl<F, D> PlaneMap for FnMap<F, D>
where
    F: Fn(Complex64) -> Complex64 + Send + Sync,
    D: Fn(Complex64) -> bool + Send + Sync,
{
    fn value(&self, z: Complex64) -> Complex64 {
        (self.map)(z)
    }

    fn defined_at(&self, z: Complex64) -> bool {
        (self.domain)(z)
    }
}

/// Disk automorphism `z ↦ e^{iθ}(z - a)/(1 - āz)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mobius {
    pub a: Complex64,
    pub theta: f64,
}

impl Mobius {
    pub fn new(a: Complex64, theta: f64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::Parameter(format!(
                "Möbius parameter needs |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        Ok(Self { a, theta })
    }

    fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.rotation() * (z - self.a) / (1.0 - self.a.conj() * z)
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.a.conj() * z;
        self.rotation() * (1.0 - self.a.norm_sqr()) / (d * d)
    }

    pub fn second(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.a.conj() * z;
        2.0 * self.a.conj() * self.rotation() * (1.0 - self.a.norm_sqr()) / (d * d * d)
    }

    pub fn inverse(&self) -> Mobius {
        // z = e^{-iθ}w + a over 1 + ā e^{-iθ} w  ⇒  parameters (-a e^{iθ}, -θ)
        Mobius {
            a: -self.a * self.rotation(),
            theta: -self.theta,
        }
    }

    /// `self ∘ inner`, again a disk automorphism.
    pub fn compose(&self, inner: &Mobius) -> Mobius {
        let zero = Complex64::new(0.0, 0.0);
        let a = inner.inverse().eval(self.a);
        // derivative at 0 equals e^{iθ}(1 - |a|²)
        let d0 = self.deriv(inner.eval(zero)) * inner.deriv(zero);
        let rot = d0 / (1.0 - a.norm_sqr());
        Mobius {
            a,
            theta: rot.arg(),
        }
    }
}

/// Where a conformal map comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum MapSource {
    Catalog,
    Theodorsen { n_modes: usize },
}

/// Holomorphic maps of the unit disk with first and second derivatives.
#[derive(Clone, Debug)]
pub enum ConformalMap {
    Identity,
    Mobius(Mobius),
    /// `z ↦ zᵏ`; analytic, conformal away from the origin.
    Power(u32),
    /// `z ↦ scale·z + shift`.
    Affine {
        scale: Complex64,
        shift: Complex64,
    },
    Theodorsen(Arc<TheodorsenMap>),
    /// `outer ∘ inner`.
    Compose(Box<ConformalMap>, Box<ConformalMap>),
}

impl ConformalMap {
    pub fn mobius(a: Complex64, theta: f64) -> Result<Self> {
        Ok(ConformalMap::Mobius(Mobius::new(a, theta)?))
    }

    pub fn compose(outer: ConformalMap, inner: ConformalMap) -> Self {
        ConformalMap::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            ConformalMap::Identity => z,
            ConformalMap::Mobius(m) => m.eval(z),
            ConformalMap::Power(k) => z.powu(*k),
            ConformalMap::Affine { scale, shift } => scale * z + shift,
            ConformalMap::Theodorsen(t) => t.eval(z),
            ConformalMap::Compose(outer, inner) => outer.eval(inner.eval(z)),
        }
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            ConformalMap::Identity => Complex64::new(1.0, 0.0),
            ConformalMap::Mobius(m) => m.deriv(z),
            ConformalMap::Power(0) => Complex64::new(0.0, 0.0),
            ConformalMap::Power(k) => *k as f64 * z.powu(k - 1),
            ConformalMap::Affine { scale, .. } => *scale,
            ConformalMap::Theodorsen(t) => t.deriv(z),
            ConformalMap::Compose(outer, inner) => outer.deriv(inner.eval(z)) * inner.deriv(z),
        }
    }

    pub fn second(&self, z: Complex64) -> Complex64 {
        match self {
            ConformalMap::Identity | ConformalMap::Affine { .. } => Complex64::new(0.0, 0.0),
            ConformalMap::Mobius(m) => m.second(z),
            ConformalMap::Power(k) if *k < 2 => Complex64::new(0.0, 0.0),
            ConformalMap::Power(k) => (*k as f64) * ((k - 1) as f64) * z.powu(k - 2),
            ConformalMap::Theodorsen(t) => t.second(z),
            ConformalMap::Compose(outer, inner) => {
                let w = inner.eval(z);
                let d = inner.deriv(z);
                outer.second(w) * d * d + outer.deriv(w) * inner.second(z)
            }
        }
    }

    pub fn source(&self) -> MapSource {
        match self {
            ConformalMap::Theodorsen(t) => MapSource::Theodorsen {
                n_modes: t.n_modes(),
            },
            ConformalMap::Compose(outer, inner) => match (outer.source(), inner.source()) {
                (MapSource::Catalog, s) | (s, _) => s,
            },
            _ => MapSource::Catalog,
        }
    }

    /// Boundary class of the image domain.
    pub fn target_smoothness(&self) -> Smoothness {
        match self {
            ConformalMap::Theodorsen(t) => t.smoothness(),
            ConformalMap::Compose(outer, _) => outer.target_smoothness(),
            _ => Smoothness::C2Alpha,
        }
    }
}

impl PlaneMap for ConformalMap {
    fn value(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
}
