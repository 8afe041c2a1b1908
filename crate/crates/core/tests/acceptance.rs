//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one line, and exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use qclab::conformal_plane::ConformalMap;
use qclab::diagnostics::{
    check_component_inequality, collar_profile, composition_laplacian_check, fit_poisson_constants,
    m_sweep, CollarVerdict,
};
use qclab::field::{dirichlet_energy_vector, ComplexField, DiskGrid, VectorField};
use qclab::scenario::random_mobius;
use qclab::solver::{
    analytic_rho_residual, default_samples, poisson_extension, reduce_elliptic,
    solve_laplace_dirichlet, solve_rho_harmonic, BoundaryData, Coefficient, EllipticCoeffs,
    HarmonicExtension, Matrix, PicardSettings,
};
use qclab::surface_chart::{
    chart_constants, conformal_factor, weighted_energy, ConformalFactor, SurfacePatch,
};
use qclab::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn disk(n: usize) -> Result<Arc<DiskGrid>> {
    Ok(Arc::new(DiskGrid::unit_disk(n)?))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{i(θ + 0.3 sin θ)}`, a smooth boundary homeomorphism.
fn smooth_homeo() -> BoundaryData {
    BoundaryData::new(|t| Complex64::from_polar(1.0, t + 0.3 * t.sin()))
}

fn sphere() -> SurfacePatch {
    SurfacePatch::SphereCap {
        radius: 1.0,
        scale: 1.0,
    }
}

fn laplace_vs_poisson() -> Result<Outcome> {
    let data = smooth_homeo();
    let mut errs = Vec::new();
    let mut slowest: f64 = 0.0;
    for n in [129, 257] {
        let g = disk(n)?;
        let start = Instant::now();
        let sol = solve_laplace_dirichlet(&g, &data)?;
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let oracle = poisson_extension(&data, &g, default_samples(n))?;
        errs.push(sol.field.max_abs_diff(&oracle.field)?);
    }
    let ratio = errs[0] / errs[1];
    outcome(
        (3.4..=4.6).contains(&ratio) && slowest < 30.0,
        format!(
            "errors {:.3e} / {:.3e}, ratio {ratio:.3}, slowest solve {slowest:.2} s",
            errs[0], errs[1]
        ),
    )
}

fn constant_rho_reduction() -> Result<Outcome> {
    let g = disk(129)?;
    let data = smooth_homeo();
    let laplace = solve_laplace_dirichlet(&g, &data)?;
    let settings = PicardSettings::default();
    let mut worst: f64 = 0.0;
    // the scaled-flat chart has a constant factor but runs the full Picard loop
    for rho in [
        ConformalFactor::constant(2.5)?,
        conformal_factor(&SurfacePatch::ScaledFlat { scale: 3.0 })?,
    ] {
        let sol = solve_rho_harmonic(&rho, &data, &g, &settings)?;
        worst = worst.max(sol.field.max_abs_diff(&laplace.field)?);
    }
    outcome(worst <= 1e-10, format!("max difference {worst:.3e}"))
}

fn holomorphic_rho_harmonicity() -> Result<Outcome> {
    let g = DiskGrid::unit_disk(129)?;
    let rho = conformal_factor(&sphere())?;
    let maps = [
        ("z", ConformalMap::Identity),
        ("z^2", ConformalMap::Power(2)),
        ("mobius", ConformalMap::mobius(c(0.3, -0.4), 1.1)?),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, m) in &maps {
        let r = analytic_rho_residual(m, &rho, &g)?;
        worst = worst.max(r);
        parts.push(format!("{name} {r:.1e}"));
    }
    outcome(worst <= 1e-8, format!("residuals {}", parts.join(", ")))
}

fn affine_component_suite() -> Result<Outcome> {
    let g = disk(33)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_identity: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..50 {
        let nu = Complex64::from_polar(0.8 * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
        let f = ComplexField::from_fn(&g, |z| z + nu * z.conj());
        let r = check_component_inequality(&f, 0.0, 0.0)?;
        worst_identity = worst_identity.max(r.identity_max_error);
        violations += r.sandwich_violations;
    }
    outcome(
        worst_identity <= 1e-10 && violations == 0,
        format!("50 maps, identity error {worst_identity:.2e}, sandwich violations {violations}"),
    )
}

fn composition_identities() -> Result<Outcome> {
    let f = HarmonicExtension::from_boundary(&smooth_homeo(), default_samples(513))?;
    let grids = [disk(129)?, disk(257)?, disk(513)?];
    let mut ratios = Vec::new();
    for seed in 0..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = ConformalMap::Mobius(random_mobius(&mut rng));
        let eta = ConformalMap::Mobius(random_mobius(&mut rng));
        let devs = grids
            .iter()
            .map(|g| Ok(composition_laplacian_check(&phi, &f, &eta, g)?.max_deviation))
            .collect::<Result<Vec<f64>>>()?;
        ratios.extend(devs.windows(2).map(|w| w[0] / w[1]));
    }
    let id = ConformalMap::Identity;
    let identity_dev = grids
        .iter()
        .map(|g| Ok(composition_laplacian_check(&id, &f, &id, g)?.max_deviation))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let ok = ratios.iter().all(|r| (3.2..=4.8).contains(r)) && identity_dev <= 1e-12;
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    outcome(
        ok,
        format!("8 mobius pairs, refinement ratios in [{lo:.2}, {hi:.2}], identity chain {identity_dev:.1e}"),
    )
}

/// Max over sample points of the finite-difference errors of `ρ` (from the
/// chart) and `(log ρ)_w` (from `ρ`) at step `h`.
fn chart_fd_errors(h: f64) -> (f64, f64) {
    let patch = sphere();
    let rho = |w: Complex64| 4.0 / (1.0 + w.norm_sqr()).powi(2);
    let log_rho_w = |w: Complex64| -2.0 * w.conj() / (1.0 + w.norm_sqr());
    let (mut e_rho, mut e_log): (f64, f64) = (0.0, 0.0);
    for i in -8..=8 {
        for j in -8..=8 {
            let w = c(i as f64 * 0.1, j as f64 * 0.1);
            if w.norm() > 0.9 {
                continue;
            }
            let (xp, xm) = (patch.point(w + h), patch.point(w - h));
            let xu: f64 = xp
                .iter()
                .zip(&xm)
                .map(|(a, b)| ((a - b) / (2.0 * h)).powi(2))
                .sum();
            e_rho = e_rho.max((xu - rho(w)).abs());
            let lx = (rho(w + h).ln() - rho(w - h).ln()) / (2.0 * h);
            let ly = (rho(w + c(0.0, h)).ln() - rho(w - c(0.0, h)).ln()) / (2.0 * h);
            e_log = e_log.max((c(lx, -ly) * 0.5 - log_rho_w(w)).norm());
        }
    }
    (e_rho, e_log)
}

fn chart_constants_sphere() -> Result<Outcome> {
    let g = DiskGrid::unit_disk(129)?;
    // chart_constants refuses any sample where |ρ_w| > 2|X_uu|/|X_u|
    let cc = chart_constants(&sphere(), &g)?;
    let factor = conformal_factor(&sphere())?;
    let mut closed_form: f64 = 0.0;
    for &idx in g.active_nodes() {
        let w = g.coord(idx);
        let s = 1.0 + w.norm_sqr();
        closed_form = closed_form
            .max((factor.rho(w) - 4.0 / (s * s)).abs())
            .max((factor.log_rho_w(w) + 2.0 * w.conj() / s).norm());
    }
    let (r1, l1) = chart_fd_errors(1e-2);
    let (r2, l2) = chart_fd_errors(5e-3);
    let (rr, lr) = (r1 / r2, l1 / l2);
    let ok = (cc.c - 1.0).abs() <= 0.02
        && closed_form <= 1e-13
        && (3.4..=4.6).contains(&rr)
        && (3.4..=4.6).contains(&lr);
    outcome(
        ok,
        format!(
            "c = {:.4}, C = {:.3}, M' = {:.3}, closed-form gap {closed_form:.1e}, FD ratios rho {rr:.2}, (log rho)_w {lr:.2}",
            cc.c, cc.big_c, cc.m_prime
        ),
    )
}

fn poisson_constant_collapse() -> Result<Outcome> {
    let g = disk(129)?;
    let patch = sphere();
    let rho = conformal_factor(&patch)?;
    let settings = PicardSettings {
        tol: 1e-8,
        ..PicardSettings::default()
    };
    let sol = solve_rho_harmonic(&rho, &smooth_homeo(), &g, &settings)?;
    let m_prime = chart_constants(&patch, &g)?.m_prime;
    let fit = fit_poisson_constants(&sol.field, &m_sweep(2.0 * m_prime, 41))?;
    let worst_n = fit
        .curve
        .iter()
        .filter(|(m, _)| *m >= m_prime / 2.0)
        .map(|p| p.1)
        .fold(0.0, f64::max);
    let bound = 10.0 * sol.record.residual;
    outcome(
        worst_n <= bound,
        format!(
            "M'/2 = {:.3}, max N(M >= M'/2) = {worst_n:.2e}, bound {bound:.2e} ({} outer iterations)",
            m_prime / 2.0,
            sol.record.outer_iterations
        ),
    )
}

fn lipschitz_probe() -> Result<Outcome> {
    let g = disk(257)?;
    let start = Instant::now();
    let smooth = poisson_extension(&smooth_homeo(), &g, default_samples(257))?;
    let p = collar_profile(&smooth.field, 16)?;
    let t_smooth = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let rough = poisson_extension(
        &BoundaryData::new(|t| c(t.abs().sqrt(), 0.0)),
        &g,
        default_samples(257),
    )?;
    let q = collar_profile(&rough.field, 16)?;
    let t_rough = start.elapsed().as_secs_f64();
    let ok = p.verdict == CollarVerdict::Plateau
        && q.verdict == CollarVerdict::Growth
        && (-0.65..=-0.35).contains(&q.exponent)
        && t_smooth < 60.0
        && t_rough < 60.0;
    outcome(
        ok,
        format!(
            "smooth {:?} (spread {:.3}, {t_smooth:.1} s), |t|^1/2 {:?} (exponent {:.3}, {t_rough:.1} s)",
            p.verdict, p.spread, q.verdict, q.exponent
        ),
    )
}

/// Symmetric square root by eigendecomposition.
fn sqrt_by_eigen(a: &Matrix) -> Matrix {
    let (p, q, r) = (a[0][0], a[0][1], a[1][1]);
    let mean = (p + r) / 2.0;
    let rad = (((p - r) / 2.0).powi(2) + q * q).sqrt();
    let (l1, l2) = (mean + rad, mean - rad);
    let theta = 0.5 * (2.0 * q).atan2(p - r);
    let (cs, sn) = (theta.cos(), theta.sin());
    let (s1, s2) = (l1.sqrt(), l2.sqrt());
    [
        [s1 * cs * cs + s2 * sn * sn, (s1 - s2) * cs * sn],
        [(s1 - s2) * cs * sn, s1 * sn * sn + s2 * cs * cs],
    ]
}

fn random_principal(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let alpha = rng.gen_range(0.2..5.0);
    let gamma = rng.gen_range(0.2..5.0);
    let beta = rng.gen_range(-0.9..0.9) * f64::sqrt(alpha * gamma);
    (alpha, beta, gamma)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn elliptic_reduction() -> Result<Outcome> {
    let g = DiskGrid::unit_disk(33)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut principal_err: f64 = 0.0;
    for _ in 0..20 {
        let (alpha, beta, gamma) = random_principal(&mut rng);
        let r = reduce_elliptic(&EllipticCoeffs::new(alpha, beta, gamma)?, &g, 0.0)?;
        let p = r.inverse_substitution;
        // w = s xx + 2 t xy + v yy; W(u) = w(P u)
        let (s, t, v) = (
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let original = 2.0 * (alpha * s + 2.0 * beta * t + gamma * v);
        let hess = |i: usize, j: usize| {
            2.0 * (s * p[0][i] * p[0][j]
                + t * (p[0][i] * p[1][j] + p[1][i] * p[0][j])
                + v * p[1][i] * p[1][j])
        };
        let reduced = hess(0, 0) + hess(1, 1);
        principal_err = principal_err.max((reduced - original).abs() / original.abs().max(1.0));
    }
    let mut mn_err: f64 = 0.0;
    for _ in 0..10 {
        let (alpha, beta, gamma) = random_principal(&mut rng);
        let k: Vec<Complex64> = (0..7).map(|_| random_complex(&mut rng)).collect();
        let w_sup = rng.gen_range(0.1..3.0);
        let mut ec = EllipticCoeffs::new(alpha, beta, gamma)?;
        let coeffs = [
            &mut ec.a1, &mut ec.b1, &mut ec.c1, &mut ec.a, &mut ec.b, &mut ec.c, &mut ec.d,
        ];
        for (slot, value) in coeffs.into_iter().zip(k.iter().copied()) {
            *slot = Coefficient::new(move |_| value);
        }
        let r = reduce_elliptic(&ec, &g, w_sup)?;

        let p = sqrt_by_eigen(&[[alpha, beta], [beta, gamma]]);
        let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        let q = [
            [p[1][1] / det, -p[0][1] / det],
            [-p[1][0] / det, p[0][0] / det],
        ];
        // (w_x, w_y) as linear functions of (W_u, W_v)
        let grad = |wu: f64, wv: f64| (q[0][0] * wu + q[1][0] * wv, q[0][1] * wu + q[1][1] * wv);
        let quad = |wu: f64, wv: f64| {
            let (x, y) = grad(wu, wv);
            k[0] * x * x + k[1] * x * y + k[2] * y * y
        };
        let lin = |wu: f64, wv: f64| {
            let (x, y) = grad(wu, wv);
            k[3] * x + k[4] * y
        };
        let (a1, c1) = (quad(1.0, 0.0), quad(0.0, 1.0));
        let b1 = quad(1.0, 1.0) - a1 - c1;
        let (a, b) = (lin(1.0, 0.0), lin(0.0, 1.0));
        let first = (a.norm() + b.norm()) / 2.0;
        let m = first + a1.norm().max(c1.norm()) + b1.norm() / 2.0;
        let n = first + k[5].norm() * w_sup + k[6].norm();
        mn_err = mn_err.max((r.m - m).abs() / m).max((r.n - n).abs() / n);
    }
    outcome(
        principal_err <= 1e-12 && mn_err <= 1e-12,
        format!("principal part error {principal_err:.1e} over 20 sets, M/N relative error {mn_err:.1e} over 10 sets"),
    )
}

fn energy_transfer() -> Result<Outcome> {
    let g = disk(129)?;
    let patch = sphere();
    let rho = conformal_factor(&patch)?;
    let id = ComplexField::from_fn(&g, |z| z);
    let weighted = weighted_energy(&id, &rho)?;
    let lifted = VectorField::from_fn(&g, patch.dim(), |z| patch.point(z))?;
    let direct = dirichlet_energy_vector(&lifted)?;
    let rel = (weighted - direct).abs() / direct;
    outcome(
        rel <= 0.02,
        format!("lifted {direct:.6}, weighted {weighted:.6}, relative gap {rel:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("laplace vs poisson oracle", laplace_vs_poisson),
        ("constant rho reduces to laplace", constant_rho_reduction),
        (
            "holomorphic maps are rho-harmonic",
            holomorphic_rho_harmonicity,
        ),
        (
            "affine component identity and sandwich",
            affine_component_suite,
        ),
        ("composition identities", composition_identities),
        ("sphere chart constants", chart_constants_sphere),
        (
            "poisson constants collapse at M'/2",
            poisson_constant_collapse,
        ),
        ("collar lipschitz probe", lipschitz_probe),
        ("elliptic reduction", elliptic_reduction),
        ("energy transfer", energy_transfer),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<40} {}  {detail}  [{:.1} s]",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
