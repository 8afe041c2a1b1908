use std::sync::Arc;

use qclab::conformal_plane::{
    derivative_bounds, theodorsen_map, ConformalMap, MapSource, Mobius, PlanarDomain,
};
use qclab::diagnostics::{beltrami, beltrami_in, beltrami_of_map};
use qclab::field::{ComplexField, DiskGrid};
use qclab::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk(n: usize) -> Arc<DiskGrid> {
    Arc::new(DiskGrid::unit_disk(n).unwrap())
}

#[test]
fn mobius_derivative_extrema() {
    let m = ConformalMap::mobius(c(0.5, 0.0), 0.0).unwrap();
    let b = derivative_bounds(&m, &disk(129));
    assert!((b.inf_abs - 1.0 / 3.0).abs() / (1.0 / 3.0) < 0.02, "{b:?}");
    assert!((b.sup_abs - 3.0).abs() / 3.0 < 0.02, "{b:?}");
    assert!(!b.anomaly);
    let id = derivative_bounds(&ConformalMap::Identity, &disk(33));
    assert_eq!((id.inf_abs, id.sup_abs), (1.0, 1.0));
}

#[test]
fn mobius_closure_under_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let mut draw = || {
            let a = Complex64::from_polar(0.9 * rng.gen::<f64>(), rng.gen_range(-3.0..3.0));
            Mobius::new(a, rng.gen_range(-3.0..3.0)).unwrap()
        };
        let (outer, inner) = (draw(), draw());
        let composed = outer.compose(&inner);
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(-3.2..3.2));
            assert!((composed.eval(z) - outer.eval(inner.eval(z))).norm() <= 1e-12);
        }
    }
}

#[test]
fn catalog_maps_satisfy_cauchy_riemann() {
    let g = disk(129);
    let maps = [
        ConformalMap::Identity,
        ConformalMap::mobius(c(0.5, 0.0), 0.0).unwrap(),
        ConformalMap::mobius(c(-0.3, 0.4), 1.2).unwrap(),
        ConformalMap::Power(3),
        ConformalMap::compose(
            ConformalMap::Power(2),
            ConformalMap::mobius(c(0.2, -0.1), 0.3).unwrap(),
        ),
    ];
    for m in &maps {
        assert!(beltrami_of_map(m, &g).unwrap().k <= 1e-6, "{m:?}");
    }
}

#[test]
fn sampled_cauchy_riemann_defect_is_second_order() {
    let m = ConformalMap::mobius(c(0.5, 0.0), 0.0).unwrap();
    let k = |n: usize| {
        let g = disk(n);
        beltrami(&ComplexField::from_fn(&g, |z| m.eval(z)))
            .unwrap()
            .k
    };
    let (coarse, fine) = (k(65), k(129));
    let ratio = coarse / fine;
    assert!((3.4..=4.6).contains(&ratio), "{coarse} {fine}");
}

#[test]
fn theodorsen_ellipse_like_map() {
    let domain = PlanarDomain::polar(vec![1.0, 0.0, 0.0, 0.2, 0.0]).unwrap();
    let map = theodorsen_map(&domain, 256).unwrap();
    assert_eq!(map.source(), MapSource::Theodorsen { n_modes: 256 });
    assert!(map.eval(Complex64::new(0.0, 0.0)).norm() <= 0.25);
    assert!(map.deriv(Complex64::new(0.0, 0.0)).im.abs() < 1e-14);
    assert!(map.deriv(Complex64::new(0.0, 0.0)).re > 0.0);
    let g = disk(257);
    let sampled = ComplexField::from_fn(&g, |z| map.eval(z));
    let b = beltrami_in(&sampled, |z| z.norm() <= 0.95).unwrap();
    assert!(b.k <= 1e-4, "{}", b.k);
    let bounds = derivative_bounds(&map, &g);
    assert!(bounds.inf_abs > 0.0 && !bounds.anomaly, "{bounds:?}");
    // boundary lands on the target curve
    for k in 0..64 {
        let t = -3.0 + 6.0 * k as f64 / 64.0;
        let w = map.eval(Complex64::from_polar(1.0, t));
        let r = 1.0 + 0.2 * (2.0 * w.arg()).cos();
        assert!((w.norm() - r).abs() < 1e-8, "{t}: {} vs {r}", w.norm());
    }
}

#[test]
fn theodorsen_correspondence_is_monotone() {
    let domain = PlanarDomain::polar(vec![1.0, 0.0, 0.1, 0.15, 0.0]).unwrap();
    let ConformalMap::Theodorsen(map) = theodorsen_map(&domain, 128).unwrap() else {
        panic!()
    };
    assert!(map.is_monotone());
    assert!(map.residual() <= 1e-10);
}
