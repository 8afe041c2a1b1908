use super::config::{DiagnosticKind, DomainSpec};
use super::expr::FUNCTIONS;
use crate::surface_chart::SurfacePatch;

/// Sorted `category name` lines whose text contains `filter`.
pub fn list_catalog(filter: &str) -> Vec<String> {
    let mut lines = Vec::new();
    lines.extend(DomainSpec::NAMES.iter().map(|n| format!("domain {n}")));
    lines.extend(SurfacePatch::NAMES.iter().map(|n| format!("surface {n}")));
    lines.push("surface constant".into());
    lines.extend(FUNCTIONS.iter().map(|(n, _)| format!("boundary {n}")));
    lines.extend(
        ["t", "theta", "z", "x", "y", "i", "pi", "e"]
            .iter()
            .map(|n| format!("boundary {n}")),
    );
    lines.extend(
        DiagnosticKind::ALL
            .iter()
            .map(|d| format!("diagnostic {}", d.name())),
    );
    lines.extend(
        ["general_elliptic", "laplace", "poisson", "rho_harmonic"]
            .iter()
            .map(|n| format!("solver {n}")),
    );
    lines.sort();
    lines.retain(|l| l.contains(filter));
    lines
}
