use std::f64::consts::PI;
use std::sync::Arc;

use qclab::conformal_plane::PlanarDomain;
use qclab::field::{
    dirichlet_energy, gradient_norm_sq, laplacian, operator_norm, partials, wirtinger_derivatives,
    write_field_csv, ComplexField, DiskGrid, NodeKind, MIN_NODES,
};
use qclab::{Complex64, Error};

fn disk(n: usize) -> Arc<DiskGrid> {
    Arc::new(DiskGrid::unit_disk(n).unwrap())
}

fn sample(z: Complex64) -> Complex64 {
    z.exp() * 0.5 + z.conj() * z * 0.25
}

// f = e^z/2 + |z|²/4: f_z = e^z/2 + zbar/4, f_zbar = z/4.
fn sample_dz(z: Complex64) -> Complex64 {
    z.exp() * 0.5 + z.conj() * 0.25
}

fn wirtinger_error(n: usize) -> f64 {
    let g = disk(n);
    let f = ComplexField::from_fn(&g, sample);
    let (fz, fzbar) = wirtinger_derivatives(&f).unwrap();
    g.active_nodes()
        .iter()
        .map(|&i| {
            let z = g.coord(i);
            (fz.at(i) - sample_dz(z))
                .norm()
                .max((fzbar.at(i) - z * 0.25).norm())
        })
        .fold(0.0, f64::max)
}

#[test]
fn grid_rejects_coarse_resolution() {
    assert!(matches!(
        DiskGrid::unit_disk(MIN_NODES - 1),
        Err(Error::Resolution(_))
    ));
    assert!(DiskGrid::unit_disk(MIN_NODES).is_ok());
}

#[test]
fn node_classification_is_consistent() {
    let g = disk(65);
    for &i in g.interior_nodes() {
        assert_eq!(g.kind(i), NodeKind::Interior);
        assert!(g.domain().contains(g.coord(i)));
    }
    for &i in g.boundary_nodes() {
        assert!(!g.arms(i).is_empty());
        for arm in g.arms(i) {
            assert!((arm.point.norm() - 1.0).abs() < 1e-12);
            assert!(arm.fraction > 0.0 && arm.fraction <= 1.0 + 1e-12);
        }
    }
    assert_eq!(
        g.active_nodes().len(),
        g.interior_nodes().len() + g.boundary_nodes().len()
    );
    // node count tracks the disk area
    let area = g.active_nodes().len() as f64 * g.h() * g.h();
    assert!((area - PI).abs() / PI < 0.05, "{area}");
}

#[test]
fn wirtinger_derivatives_are_second_order() {
    let e = [
        wirtinger_error(65),
        wirtinger_error(129),
        wirtinger_error(257),
    ];
    for w in e.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 3.0 && ratio < 5.5, "{e:?}");
    }
}

#[test]
fn partials_of_linear_maps_are_exact() {
    let g = disk(33);
    let f = ComplexField::from_fn(&g, |z| z * Complex64::new(2.0, 1.0) + z.conj() * 0.5);
    let (fx, fy) = partials(&f).unwrap();
    for &i in g.active_nodes() {
        assert!((fx.at(i) - Complex64::new(2.5, 1.0)).norm() < 1e-12);
        assert!((fy.at(i) - Complex64::new(-1.0, 1.5)).norm() < 1e-12);
    }
}

#[test]
fn laplacian_of_quadratic_is_exact() {
    let g = disk(65);
    let f = ComplexField::from_fn(&g, |z| z * z + z * z.conj() * 3.0);
    let lap = laplacian(&f).unwrap();
    for &i in g.interior_nodes() {
        assert!((lap.at(i) - Complex64::new(12.0, 0.0)).norm() < 1e-8);
    }
}

#[test]
fn derivatives_need_boundary_values() {
    let g = disk(33);
    let f = ComplexField::from_fn(&g, |z| z).restrict_to_interior();
    assert!(matches!(partials(&f), Err(Error::Precondition(_))));
}

#[test]
fn norms_of_the_identity() {
    let g = disk(33);
    let id = ComplexField::from_fn(&g, |z| z);
    for &i in g.active_nodes() {
        assert!((gradient_norm_sq(&id).unwrap().at(i) - 2.0).abs() < 1e-12);
        assert!((operator_norm(&id).unwrap().at(i) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn energy_of_identity_is_twice_the_area() {
    for n in [65, 129] {
        let g = disk(n);
        let e = dirichlet_energy(&ComplexField::from_fn(&g, |z| z)).unwrap();
        assert!((e - 2.0 * PI).abs() / (2.0 * PI) < 5e-3, "n={n}: {e}");
    }
    let g = Arc::new(DiskGrid::new(PlanarDomain::ellipse(2.0, 1.0).unwrap(), 129).unwrap());
    let e = dirichlet_energy(&ComplexField::from_fn(&g, |z| z)).unwrap();
    assert!((e - 4.0 * PI).abs() / (4.0 * PI) < 5e-3, "{e}");
}

#[test]
fn interpolation_reproduces_bilinear_data() {
    let g = disk(65);
    let f = ComplexField::from_fn(&g, |z| Complex64::new(z.re * z.im + z.re, 2.0 * z.im));
    let p = Complex64::new(0.123, -0.321);
    let v = f.interpolate(p).unwrap();
    assert!((v - Complex64::new(p.re * p.im + p.re, 2.0 * p.im)).norm() < 1e-12);
    assert!(f.interpolate(Complex64::new(3.0, 0.0)).is_none());
}

#[test]
fn csv_export_has_one_row_per_node() {
    let g = disk(33);
    let f = ComplexField::from_fn(&g, |z| z);
    let mut buf = Vec::new();
    write_field_csv(&f, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,re,im"));
    assert_eq!(lines.count(), f.nodes().len());
}
