use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{DiagnosticKind, DomainSpec, Scenario, SolverKind};
use super::expr::Expr;
use crate::conformal_plane::{ConformalMap, Mobius, PlanarDomain};
use crate::diagnostics::{
    beltrami, bilipschitz_probe, check_component_inequality, collar_profile,
    composition_laplacian_check, fit_poisson_constants, m_sweep, verify_gradient_chain,
    CollarProfile,
};
use crate::error::{Error, Result};
use crate::field::{dirichlet_energy_vector, write_field_csv, ComplexField, DiskGrid, VectorField};
use crate::solver::{
    default_samples, poisson_extension, solve_general_elliptic, solve_laplace_dirichlet,
    solve_rho_harmonic, BoundaryData, Coefficient, EllipticCoeffs, HarmonicExtension,
    PicardSettings, SolveRecord,
};
use crate::surface_chart::{
    chart_constants, conformal_factor, weighted_energy, ConformalFactor, SurfacePatch,
};

/// Collars requested from the profile.
const MAX_COLLARS: usize = 16;
/// Points in the `M` sweep of the Poisson fit.
const SWEEP_POINTS: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: Value,
    pub threshold: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticEntry {
    pub name: &'static str,
    pub result: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridInfo {
    pub n: usize,
    pub h: f64,
    pub active: usize,
    pub interior: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub grid: GridInfo,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: Scenario,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolveRecord>,
    pub diagnostics: Vec<DiagnosticEntry>,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    pub fn diagnostic(&self, name: &str) -> Option<&Value> {
        self.diagnostics
            .iter()
            .find(|d| d.name == name)
            .map(|d| &d.result)
    }
}

/// Command-line overrides applied on top of a scenario file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
}

impl RunOptions {
    pub fn apply(&self, s: &mut Scenario) -> Result<()> {
        if let Some(n) = self.grid {
            s.grid = n;
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s.validate()
    }

    fn out_dir(&self, s: &Scenario) -> PathBuf {
        self.out
            .clone()
            .or_else(|| s.output.dir.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

struct Prepared {
    grid: Arc<DiskGrid>,
    data: BoundaryData,
    patch: Option<SurfacePatch>,
    rho: Option<ConformalFactor>,
}

fn config(e: Error) -> Error {
    match e {
        Error::Config(m) => Error::Config(m),
        other => Error::Config(other.to_string()),
    }
}

fn domain_of(spec: &DomainSpec) -> Result<PlanarDomain> {
    match spec {
        DomainSpec::Disk {} => Ok(PlanarDomain::unit_disk()),
        DomainSpec::Ellipse { a, b } => PlanarDomain::ellipse(*a, *b),
        DomainSpec::Polar { coeffs } => PlanarDomain::polar(coeffs.clone()),
    }
}

/// Everything that can be rejected before any solving or writing.
fn prepare(s: &Scenario) -> Result<Prepared> {
    s.validate()?;
    let grid =
        Arc::new(DiskGrid::new(domain_of(&s.domain).map_err(config)?, s.grid).map_err(config)?);
    let expr = Expr::parse(&s.boundary.expr)?;
    for k in 0..64 {
        let t = -std::f64::consts::PI + (k as f64 + 0.5) * std::f64::consts::TAU / 64.0;
        let v = expr.on_circle(t);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Config(format!(
                "boundary expression is not finite at t = {t}"
            )));
        }
    }
    let data = BoundaryData::new(move |t| expr.on_circle(t));
    let (patch, rho) = match &s.surface {
        None => (None, None),
        Some(sf) => match sf.patch()? {
            None => (
                None,
                Some(ConformalFactor::constant(sf.params[0]).map_err(config)?),
            ),
            Some(p) => {
                let rho = conformal_factor(&p).map_err(config)?;
                (Some(p), Some(rho))
            }
        },
    };
    Ok(Prepared {
        grid,
        data,
        patch,
        rho,
    })
}

enum Solved {
    Field(ComplexField, SolveRecord),
    Poisson(ComplexField, HarmonicExtension),
}

impl Solved {
    fn field(&self) -> &ComplexField {
        match self {
            Solved::Field(f, _) | Solved::Poisson(f, _) => f,
        }
    }

    fn record(&self) -> Option<&SolveRecord> {
        match self {
            Solved::Field(_, r) => Some(r),
            Solved::Poisson(..) => None,
        }
    }
}

fn solve(s: &Scenario, p: &Prepared) -> Result<Solved> {
    let settings = PicardSettings {
        tol: s.solver.tol,
        relaxation: s.solver.relaxation,
        max_outer: s.solver.max_outer,
    };
    match s.solver.kind {
        SolverKind::Laplace => {
            let sol = solve_laplace_dirichlet(&p.grid, &p.data)?;
            Ok(Solved::Field(sol.field, sol.record))
        }
        SolverKind::RhoHarmonic => {
            let rho = p.rho.as_ref().expect("validated");
            let sol = solve_rho_harmonic(rho, &p.data, &p.grid, &settings)?;
            Ok(Solved::Field(sol.field, sol.record))
        }
        SolverKind::GeneralElliptic => {
            let mut ec = EllipticCoeffs::new(s.solver.alpha, s.solver.beta, s.solver.gamma)
                .map_err(config)?;
            for (name, src) in &s.solver.coeffs {
                let expr = Expr::parse(src)?;
                let c = Coefficient::new(move |z| expr.at_point(z));
                match name.as_str() {
                    "a1" => ec.a1 = c,
                    "b1" => ec.b1 = c,
                    "c1" => ec.c1 = c,
                    "a" => ec.a = c,
                    "b" => ec.b = c,
                    "c" => ec.c = c,
                    _ => ec.d = c,
                }
            }
            let sol = solve_general_elliptic(&ec, &p.data, &p.grid, &settings)?;
            Ok(Solved::Field(sol.solution.field, sol.solution.record))
        }
        SolverKind::Poisson => {
            let samples = s.solver.samples.unwrap_or_else(|| default_samples(s.grid));
            let ext = poisson_extension(&p.data, &p.grid, samples)?;
            Ok(Solved::Poisson(ext.field, ext.extension))
        }
    }
}

/// Disk automorphism with `|a| ≤ 1/2` drawn from `rng`.
pub fn random_mobius(rng: &mut impl Rng) -> Mobius {
    let r = 0.5 * rng.gen::<f64>().sqrt();
    let a = Complex64::from_polar(
        r,
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    );
    Mobius::new(
        a,
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
    .expect("|a| < 1")
}

struct Outputs {
    collars: Option<CollarProfile>,
    mu: Option<ComplexField>,
}

fn run_diagnostic(
    kind: DiagnosticKind,
    s: &Scenario,
    p: &Prepared,
    solved: &Solved,
    outputs: &mut Outputs,
    checks: &mut Vec<Check>,
) -> Result<Value> {
    let f = solved.field();
    let residual = solved.record().map_or(0.0, |r| r.residual);
    let m_prime = || -> Result<Option<f64>> {
        match &p.patch {
            Some(patch) => Ok(Some(
                chart_constants(patch, &DiskGrid::unit_disk(s.grid)?)?.m_prime,
            )),
            None => Ok(None),
        }
    };
    let e = &s.expect;
    Ok(match kind {
        DiagnosticKind::Beltrami => {
            let b = beltrami(f)?;
            if let Some(k_max) = e.k_max {
                checks.push(check("k_max", json!(b.k), json!(k_max), b.k <= k_max));
            }
            let v = serde_json::to_value(&b)?;
            outputs.mu = Some(b.mu);
            v
        }
        DiagnosticKind::Collar => {
            let c = collar_profile(f, MAX_COLLARS)?;
            if let Some(want) = e.collar_verdict {
                checks.push(check(
                    "collar_verdict",
                    json!(c.verdict),
                    json!(want),
                    c.verdict == want,
                ));
            }
            if let Some([lo, hi]) = e.exponent_range {
                checks.push(check(
                    "exponent_range",
                    json!(c.exponent),
                    json!([lo, hi]),
                    (lo..=hi).contains(&c.exponent),
                ));
            }
            let v = serde_json::to_value(&c)?;
            outputs.collars = Some(c);
            v
        }
        DiagnosticKind::Bilipschitz => serde_json::to_value(bilipschitz_probe(f)?)?,
        DiagnosticKind::FitPoisson => {
            let m_prime = m_prime()?;
            let top = m_prime.unwrap_or(1.0);
            let fit = fit_poisson_constants(f, &m_sweep(top, SWEEP_POINTS))?;
            let half = m_prime.map(|m| m / 2.0);
            let n_half = half.and_then(|m| fit.n_at_least(m * (1.0 - 1e-12)));
            if let (Some(factor), Some(n)) = (e.collapse_factor, n_half) {
                let bound = factor * residual;
                checks.push(check("collapse_factor", json!(n), json!(bound), n <= bound));
            }
            json!({ "fit": fit, "m_prime": m_prime, "half_m_prime": half, "n_at_half_m_prime": n_half, "solver_residual": residual })
        }
        DiagnosticKind::ComponentInequality => {
            let m_prime = m_prime()?;
            let fit = fit_poisson_constants(f, &m_sweep(m_prime.unwrap_or(1.0), SWEEP_POINTS))?;
            let (m, n) = match m_prime {
                Some(mp) => (
                    mp / 2.0,
                    fit.n_at_least(mp / 2.0 * (1.0 - 1e-12))
                        .unwrap_or(fit.chosen.1),
                ),
                None => fit.chosen,
            };
            serde_json::to_value(check_component_inequality(f, m, n)?)?
        }
        DiagnosticKind::GradientChain => serde_json::to_value(verify_gradient_chain(f)?)?,
        DiagnosticKind::Composition => {
            let Solved::Poisson(_, ext) = solved else {
                unreachable!("validated")
            };
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let (phi, eta) = (random_mobius(&mut rng), random_mobius(&mut rng));
            let (phi_map, eta_map) = (ConformalMap::Mobius(phi), ConformalMap::Mobius(eta));
            let coarse = composition_laplacian_check(&phi_map, ext, &eta_map, &p.grid)?;
            let fine_grid = Arc::new(DiskGrid::new(p.grid.domain().clone(), 2 * s.grid - 1)?);
            let fine = composition_laplacian_check(&phi_map, ext, &eta_map, &fine_grid)?;
            let ratio = coarse.max_deviation / fine.max_deviation;
            json!({ "phi": phi, "eta": eta, "coarse": coarse, "fine": fine, "refinement_ratio": ratio })
        }
        DiagnosticKind::ChartConstants => {
            let patch = p.patch.as_ref().expect("validated");
            serde_json::to_value(chart_constants(patch, &DiskGrid::unit_disk(s.grid)?)?)?
        }
        DiagnosticKind::Energy => {
            let patch = p.patch.as_ref().expect("validated");
            let rho = p.rho.as_ref().expect("validated");
            let weighted = weighted_energy(f, rho)?;
            let mut nodes = f.grid().active_nodes().iter();
            let lifted = VectorField::from_fn(f.grid(), patch.dim(), |_| {
                patch.point(f.at(*nodes.next().expect("one call per active node")))
            })?;
            let direct = dirichlet_energy_vector(&lifted)?;
            let rel = (weighted - direct).abs() / direct.abs().max(f64::MIN_POSITIVE);
            if let Some(tol) = e.energy_rel_tol {
                checks.push(check("energy_rel_tol", json!(rel), json!(tol), rel <= tol));
            }
            json!({ "weighted_energy": weighted, "lifted_energy": direct, "relative_gap": rel })
        }
    })
}

fn check(name: &str, measured: Value, threshold: Value, passed: bool) -> Check {
    Check {
        name: name.into(),
        measured,
        threshold,
        passed,
    }
}

fn write_collars(profile: &CollarProfile, out: impl Write) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "delta,nodes,sup_grad")?;
    for c in &profile.collars {
        writeln!(out, "{:e},{},{:e}", c.delta, c.nodes, c.sup_grad)?;
    }
    out.flush()?;
    Ok(())
}

/// Runs a scenario and writes `<name>.report.json` plus CSV artifacts.
///
/// Configuration problems return `Err(Error::Config)` before anything is
/// written; solver or diagnostic failures produce a failed report.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let mut s = scenario.clone();
    opts.apply(&mut s)?;
    let prepared = prepare(&s)?;
    let out_dir = opts.out_dir(&s);
    let grid = &prepared.grid;
    let grid_info = GridInfo {
        n: grid.n(),
        h: grid.h(),
        active: grid.active_nodes().len(),
        interior: grid.interior_nodes().len(),
    };
    let t_solve = Instant::now();
    let solved = solve(&s, &prepared);
    let solve_ms = t_solve.elapsed().as_secs_f64() * 1e3;
    let mut report = Report {
        scenario: s.clone(),
        status: Status::Passed,
        failure: None,
        solver: None,
        diagnostics: Vec::new(),
        checks: Vec::new(),
        artifacts: Vec::new(),
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION"),
            grid: grid_info,
            timing: Timing {
                solve_ms,
                total_ms: 0.0,
            },
        },
    };
    let mut outputs = Outputs {
        collars: None,
        mu: None,
    };
    let mut field = None;
    match solved {
        Err(e) => {
            report.status = Status::Failed;
            report.failure = Some(format!("solver: {e}"));
        }
        Ok(solved) => {
            report.solver = solved.record().cloned();
            if let (Some(max), Some(rec)) = (s.expect.residual_max, solved.record()) {
                report.checks.push(check(
                    "residual_max",
                    json!(rec.residual),
                    json!(max),
                    rec.residual <= max,
                ));
            }
            for &kind in &s.diagnostics {
                match run_diagnostic(
                    kind,
                    &s,
                    &prepared,
                    &solved,
                    &mut outputs,
                    &mut report.checks,
                ) {
                    Ok(v) => report.diagnostics.push(DiagnosticEntry {
                        name: kind.name(),
                        result: v,
                    }),
                    Err(e) => {
                        report.diagnostics.push(DiagnosticEntry {
                            name: kind.name(),
                            result: json!({ "error": e.to_string() }),
                        });
                        report.status = Status::Failed;
                        report
                            .failure
                            .get_or_insert_with(|| format!("{}: {e}", kind.name()));
                    }
                }
            }
            field = Some(solved.field().clone());
        }
    }
    if report.checks.iter().any(|c| !c.passed) {
        report.status = Status::Failed;
    }
    fs::create_dir_all(&out_dir)?;
    let mut write = |suffix: &str, f: &dyn Fn(fs::File) -> Result<()>| -> Result<()> {
        let name = format!("{}.{suffix}", s.name);
        f(fs::File::create(out_dir.join(&name))?)?;
        report.artifacts.push(name);
        Ok(())
    };
    if let Some(field) = &field {
        write("solution.csv", &|file| {
            write_field_csv(field, BufWriter::new(file))
        })?;
    }
    if let Some(mu) = &outputs.mu {
        write("mu.csv", &|file| write_field_csv(mu, BufWriter::new(file)))?;
    }
    if let Some(c) = &outputs.collars {
        write("collars.csv", &|file| write_collars(c, file))?;
    }
    report.artifacts.push(format!("{}.report.json", s.name));
    report.provenance.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    let text = serde_json::to_string_pretty(&report)?;
    fs::write(out_dir.join(format!("{}.report.json", s.name)), text + "\n")?;
    Ok(report)
}

/// Reads, parses and runs one scenario file.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<Report> {
    let text = fs::read_to_string(path)?;
    let scenario = Scenario::parse_toml(&text)?;
    run_scenario(&scenario, opts)
}
