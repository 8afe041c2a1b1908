use std::sync::Arc;

use qclab::conformal_plane::ConformalMap;
use qclab::diagnostics::{
    beltrami, beltrami_in, beltrami_of_map, bilipschitz_probe, check_component_inequality,
    collar_profile, composition_laplacian_check, fit_poisson_constants, m_sweep,
    verify_gradient_chain, CollarVerdict,
};
use qclab::field::{ComplexField, DiskGrid};
use qclab::solver::{default_samples, poisson_extension, BoundaryData, HarmonicExtension};
use qclab::{Complex64, Error};

fn disk(n: usize) -> Arc<DiskGrid> {
    Arc::new(DiskGrid::unit_disk(n).unwrap())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn qc(z: Complex64) -> Complex64 {
    z + z.conj() * 0.3 + z * z * 0.1
}

#[test]
fn dilatation_is_invariant_under_postcomposition() {
    let g = disk(129);
    let phi = ConformalMap::mobius(c(0.2, 0.1), 0.4).unwrap();
    let f = ComplexField::from_fn(&g, |z| qc(z) * 0.5);
    let fhat = ComplexField::from_fn(&g, |z| phi.eval(qc(z) * 0.5));
    let (a, b) = (beltrami(&f).unwrap(), beltrami(&fhat).unwrap());
    assert!((a.k - b.k).abs() < 1e-3, "{} vs {}", a.k, b.k);
    for &i in g.interior_nodes() {
        assert!((a.mu.at(i).norm() - b.mu.at(i).norm()).abs() < 5e-3);
    }
}

#[test]
fn precomposition_transports_the_dilatation() {
    let g = disk(129);
    let eta = ConformalMap::mobius(c(-0.1, 0.2), 0.0).unwrap();
    let f = ComplexField::from_fn(&g, qc);
    let fhat = ComplexField::from_fn(&g, |z| qc(eta.eval(z)));
    let k_f = beltrami(&f).unwrap().k;
    // η maps the disk onto itself, so the sup is preserved up to sampling
    let k_hat = beltrami(&fhat).unwrap().k;
    assert!((k_f - k_hat).abs() < 5e-3, "{k_f} vs {k_hat}");
}

#[test]
fn conformal_maps_have_vanishing_dilatation() {
    let g = disk(65);
    let m = ConformalMap::mobius(c(0.5, 0.0), 1.0).unwrap();
    let b = beltrami_of_map(&m, &g).unwrap();
    assert_eq!(b.k, 0.0);
    assert!(b.is_quasiconformal());
}

#[test]
fn affine_dilatation_is_exact() {
    let g = disk(33);
    let f = ComplexField::from_fn(&g, |z| z * 2.0 + z.conj() * c(0.0, 0.8));
    let b = beltrami(&f).unwrap();
    assert!((b.k - 0.4).abs() < 1e-13);
    let inner = beltrami_in(&f, |z| z.norm() < 0.5).unwrap();
    assert!(inner.nodes < b.nodes);
}

#[test]
fn folds_are_not_quasiconformal() {
    let g = disk(33);
    let b = beltrami(&ComplexField::from_fn(&g, |z| z.conj() * 2.0 + z)).unwrap();
    assert!(b.k > 1.0 && !b.is_quasiconformal());
    let constant = beltrami(&ComplexField::from_fn(&g, |_| c(1.0, 1.0)));
    assert!(matches!(constant, Err(Error::Precondition(_))));
    assert!(check_component_inequality(
        &ComplexField::from_fn(&g, |z| z.conj() * 2.0 + z),
        0.0,
        0.0
    )
    .is_err());
}

#[test]
fn poisson_fit_of_a_manufactured_map() {
    let g = disk(65);
    let f = ComplexField::from_fn(&g, |z| {
        z + z.norm_sqr() * 0.05 + z.conj() * z.conj() * z * 0.02
    });
    let fit = fit_poisson_constants(&f, &m_sweep(1.0, 21)).unwrap();
    assert!(fit.residual_ok);
    assert!(fit.curve.windows(2).all(|w| w[1].1 <= w[0].1));
    assert_eq!(fit.n_at_least(0.5), Some(fit.curve[10].1));
    assert_eq!(fit.n_at_least(2.0), None);
}

#[test]
fn component_identity_holds_for_harmonic_extensions() {
    let g = disk(65);
    let data = BoundaryData::from_map(|z| z + z.conj() * 0.2 + z * z * 0.1);
    let ext = poisson_extension(&data, &g, default_samples(65)).unwrap();
    let fit = fit_poisson_constants(&ext.field, &m_sweep(1.0, 11)).unwrap();
    let r = check_component_inequality(&ext.field, fit.chosen.0, fit.chosen.1).unwrap();
    assert!(r.identity_max_error < 1e-10);
    assert_eq!(r.sandwich_violations, 0);
    assert_eq!(r.implied_bound_violations, 0);
    assert_eq!(r.stated_bound_violations, 0);
}

#[test]
fn gradient_chain_on_a_smooth_qc_map() {
    let g = disk(65);
    let r = verify_gradient_chain(&ComplexField::from_fn(&g, qc)).unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.global_slack >= 0.0);
}

#[test]
fn composition_formulas_are_second_order() {
    let phi = ConformalMap::mobius(c(0.1, -0.2), 0.3).unwrap();
    let eta = ConformalMap::mobius(c(0.2, 0.2), -0.5).unwrap();
    let data = BoundaryData::new(|t| c(t.cos(), (2.0 * t).sin() * 0.3 + t.sin() * 0.6));
    let f = HarmonicExtension::from_boundary(&data, 1024).unwrap();
    let devs: Vec<f64> = [65, 129]
        .iter()
        .map(|&n| {
            composition_laplacian_check(&phi, &f, &eta, &disk(n))
                .unwrap()
                .max_deviation
        })
        .collect();
    assert!(devs[0] / devs[1] > 3.0, "{devs:?}");
}

#[test]
fn collars_distinguish_smooth_from_singular_data() {
    let g = disk(129);
    let smooth = poisson_extension(
        &BoundaryData::from_map(|z| z + z * z * 0.2),
        &g,
        default_samples(129),
    )
    .unwrap();
    let p = collar_profile(&smooth.field, 8).unwrap();
    assert_eq!(p.verdict, CollarVerdict::Plateau);
    let rough = poisson_extension(
        &BoundaryData::new(|t| c(t.abs().sqrt(), 0.0)),
        &g,
        default_samples(129),
    )
    .unwrap();
    let q = collar_profile(&rough.field, 8).unwrap();
    assert_eq!(q.verdict, CollarVerdict::Growth);
    assert!(q.exponent < -0.35 && q.exponent > -0.65, "{}", q.exponent);
}

#[test]
fn bilipschitz_probe_sees_a_boundary_critical_point() {
    let g = disk(129);
    // f' = (1 - z)² vanishes on the boundary at z = 1
    let f = ComplexField::from_fn(&g, |z| z - z * z + z * z * z / 3.0);
    let r = bilipschitz_probe(&f).unwrap();
    assert!(!r.above_floor, "{r:?}");
    assert!(
        bilipschitz_probe(&ComplexField::from_fn(&g, qc))
            .unwrap()
            .above_floor
    );
}

#[test]
fn too_few_collars_is_a_resolution_error() {
    let g = disk(33);
    assert!(matches!(
        collar_profile(&ComplexField::from_fn(&g, |z| z), 1),
        Err(Error::Resolution(_))
    ));
}
