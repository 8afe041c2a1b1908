use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expr::Expr;
use crate::diagnostics::CollarVerdict;
use crate::error::{Error, Result};
use crate::field::MIN_NODES;
use crate::surface_chart::SurfacePatch;

/// One experiment: domain, surface, boundary data, solver, diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub grid: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub diagnostics: Vec<DiagnosticKind>,
    pub domain: DomainSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    pub boundary: BoundarySpec,
    pub solver: SolverSpec,
    #[serde(default)]
    pub expect: Expectations,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Beltrami,
    Collar,
    Bilipschitz,
    FitPoisson,
    ComponentInequality,
    GradientChain,
    Composition,
    ChartConstants,
    Energy,
}

impl DiagnosticKind {
    pub const ALL: [DiagnosticKind; 9] = [
        DiagnosticKind::Beltrami,
        DiagnosticKind::Bilipschitz,
        DiagnosticKind::ChartConstants,
        DiagnosticKind::Collar,
        DiagnosticKind::ComponentInequality,
        DiagnosticKind::Composition,
        DiagnosticKind::Energy,
        DiagnosticKind::FitPoisson,
        DiagnosticKind::GradientChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiagnosticKind::Beltrami => "beltrami",
            DiagnosticKind::Collar => "collar",
            DiagnosticKind::Bilipschitz => "bilipschitz",
            DiagnosticKind::FitPoisson => "fit_poisson",
            DiagnosticKind::ComponentInequality => "component_inequality",
            DiagnosticKind::GradientChain => "gradient_chain",
            DiagnosticKind::Composition => "composition",
            DiagnosticKind::ChartConstants => "chart_constants",
            DiagnosticKind::Energy => "energy",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    // struct form so that unknown keys are rejected
    Disk {},
    Ellipse {
        a: f64,
        b: f64,
    },
    /// `r(θ) = c0 + Σ a_k cos kθ + b_k sin kθ`, listed as `[c0, a1, b1, a2, b2, ...]`.
    Polar {
        coeffs: Vec<f64>,
    },
}

impl DomainSpec {
    pub const NAMES: [&'static str; 3] = ["disk", "ellipse", "polar"];
}

/// Catalog surface by name, or `name = "constant"` with `params = [value]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl SurfaceSpec {
    pub fn is_constant(&self) -> bool {
        self.name == "constant"
    }

    pub fn patch(&self) -> Result<Option<SurfacePatch>> {
        if self.is_constant() {
            match self.params.as_slice() {
                [v] if v.is_finite() && *v > 0.0 => Ok(None),
                _ => Err(Error::Config(
                    "constant surface needs one positive parameter".into(),
                )),
            }
        } else {
            SurfacePatch::from_name(&self.name, &self.params).map(Some)
        }
    }
}

/// Dirichlet data as an expression in the curve parameter `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    pub expr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Laplace,
    RhoHarmonic,
    GeneralElliptic,
    /// Poisson-integral extension; unit disk only.
    Poisson,
}

fn default_tol() -> f64 {
    1e-8
}
fn default_relaxation() -> f64 {
    0.5
}
fn default_max_outer() -> usize {
    500
}
fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub kind: SolverKind,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_relaxation")]
    pub relaxation: f64,
    #[serde(default = "default_max_outer")]
    pub max_outer: usize,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    /// Lower-order coefficients `a1, b1, c1, a, b, c, d` as expressions in `z`, `x`, `y`.
    #[serde(default)]
    pub coeffs: BTreeMap<String, String>,
    /// Boundary sample count for the Poisson extension; defaults to a power of two above `32 n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

pub const COEFFICIENT_NAMES: [&str; 7] = ["a", "a1", "b", "b1", "c", "c1", "d"];

/// Optional pass/fail thresholds checked after the run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collar_verdict: Option<CollarVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_range: Option<[f64; 2]>,
    /// `N(M'/2) ≤ factor · solver residual`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collapse_factor: Option<f64>,
    /// Relative gap allowed between the two energy quadratures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_rel_tol: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self> {
        let s = Self::parse_toml(text)?;
        s.validate()?;
        Ok(s)
    }

    /// Parses without the semantic checks, so overrides can be applied first.
    pub fn parse_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return cfg(format!(
                "scenario name '{}' must be non-empty [A-Za-z0-9_-]",
                self.name
            ));
        }
        if self.grid < MIN_NODES {
            return cfg(format!(
                "grid = {} is below the minimum {MIN_NODES}",
                self.grid
            ));
        }
        let s = &self.solver;
        if !(s.tol > 0.0 && s.tol.is_finite()) {
            return cfg(format!("solver tol must be positive, got {}", s.tol));
        }
        if !(s.relaxation > 0.0 && s.relaxation <= 1.0) {
            return cfg(format!(
                "solver relaxation must lie in (0, 1], got {}",
                s.relaxation
            ));
        }
        if s.max_outer == 0 {
            return cfg("solver max_outer must be positive".into());
        }
        for key in s.coeffs.keys() {
            if !COEFFICIENT_NAMES.contains(&key.as_str()) {
                return cfg(format!("unknown coefficient '{key}'"));
            }
        }
        if s.kind != SolverKind::GeneralElliptic
            && (!s.coeffs.is_empty() || s.alpha != 1.0 || s.beta != 0.0 || s.gamma != 1.0)
        {
            return cfg("coefficients apply only to the general_elliptic solver".into());
        }
        for src in s.coeffs.values() {
            Expr::parse(src)?;
        }
        Expr::parse(&self.boundary.expr)?;
        match &self.domain {
            DomainSpec::Disk {} => {}
            DomainSpec::Ellipse { a, b } if *a > 0.0 && *b > 0.0 => {}
            DomainSpec::Ellipse { .. } => return cfg("ellipse semi-axes must be positive".into()),
            DomainSpec::Polar { coeffs } if coeffs.len() % 2 == 1 => {}
            DomainSpec::Polar { .. } => {
                return cfg("polar coefficients must be [c0, a1, b1, ...]".into())
            }
        }
        if let Some(surface) = &self.surface {
            surface.patch()?;
        }
        let needs_patch = |what: &str| -> Result<()> {
            match &self.surface {
                Some(sf) if !sf.is_constant() => Ok(()),
                _ => cfg(format!("{what} needs a catalog surface")),
            }
        };
        match s.kind {
            SolverKind::RhoHarmonic if self.surface.is_none() => {
                return cfg("rho_harmonic needs a [surface] section".into())
            }
            SolverKind::Poisson if !matches!(self.domain, DomainSpec::Disk {}) => {
                return cfg("the poisson solver needs the disk domain".into())
            }
            _ => {}
        }
        let mut seen = Vec::new();
        for d in &self.diagnostics {
            if seen.contains(d) {
                return cfg(format!("diagnostic '{}' listed twice", d.name()));
            }
            seen.push(*d);
            match d {
                DiagnosticKind::ChartConstants | DiagnosticKind::Energy => needs_patch(d.name())?,
                DiagnosticKind::Composition if s.kind != SolverKind::Poisson => {
                    return cfg("composition needs the poisson solver".into())
                }
                _ => {}
            }
        }
        let e = &self.expect;
        let requires = |flag: bool, what: &str, diag: DiagnosticKind| -> Result<()> {
            if flag && !self.diagnostics.contains(&diag) {
                return cfg(format!(
                    "expectation '{what}' needs diagnostic '{}'",
                    diag.name()
                ));
            }
            Ok(())
        };
        requires(e.k_max.is_some(), "k_max", DiagnosticKind::Beltrami)?;
        requires(
            e.collar_verdict.is_some(),
            "collar_verdict",
            DiagnosticKind::Collar,
        )?;
        requires(
            e.exponent_range.is_some(),
            "exponent_range",
            DiagnosticKind::Collar,
        )?;
        requires(
            e.collapse_factor.is_some(),
            "collapse_factor",
            DiagnosticKind::FitPoisson,
        )?;
        requires(
            e.energy_rel_tol.is_some(),
            "energy_rel_tol",
            DiagnosticKind::Energy,
        )?;
        if e.collapse_factor.is_some() {
            needs_patch("collapse_factor")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
name = "basic"
grid = 33
diagnostics = ["beltrami", "collar"]

[domain]
kind = "disk"

[boundary]
expr = "z"

[solver]
kind = "laplace"
"#;

    #[test]
    fn parses_and_round_trips() {
        let s = Scenario::from_toml(BASIC).unwrap();
        assert_eq!(s.solver.tol, 1e-8);
        assert_eq!(
            s.diagnostics,
            vec![DiagnosticKind::Beltrami, DiagnosticKind::Collar]
        );
        let again = Scenario::from_toml(&s.to_toml().unwrap()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = BASIC.replace("grid = 33", "grid = 33\ncolour = 1");
        assert!(matches!(Scenario::from_toml(&text), Err(Error::Config(_))));
        let text = BASIC.replace("kind = \"disk\"", "kind = \"disk\"\nradius = 2");
        assert!(matches!(Scenario::from_toml(&text), Err(Error::Config(_))));
    }

    #[test]
    fn bad_values_rejected() {
        for (from, to) in [
            ("grid = 33", "grid = 17"),
            ("kind = \"laplace\"", "kind = \"laplace\"\ntol = -1"),
            ("expr = \"z\"", "expr = \"w\""),
            ("[\"beltrami\", \"collar\"]", "[\"beltrami\", \"beltrami\"]"),
            ("kind = \"laplace\"", "kind = \"rho_harmonic\""),
            ("kind = \"laplace\"", "kind = \"laplace\"\nalpha = 2"),
        ] {
            let text = BASIC.replace(from, to);
            assert!(
                matches!(Scenario::from_toml(&text), Err(Error::Config(_))),
                "{to}"
            );
        }
        let text = format!("{BASIC}\n[surface]\nname = \"spheer\"\n");
        assert!(matches!(Scenario::from_toml(&text), Err(Error::Config(_))));
    }
}
