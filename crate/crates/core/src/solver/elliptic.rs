use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::boundary::BoundaryData;
use super::rho::{picard, PicardSettings};
use super::{partials_at, Solution};
use crate::conformal_plane::apply_matrix;
use crate::error::{Error, Result};
use crate::field::DiskGrid;

pub type Matrix = [[f64; 2]; 2];

/// Coefficient function of `z = x + iy`.
#[derive(Clone)]
pub struct Coefficient(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>);

impl Coefficient {
    pub fn new(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Coefficient(Arc::new(f))
    }

    pub fn constant(value: f64) -> Self {
        Self::new(move |_| Complex64::new(value, 0.0))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.0)(z)
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Coefficient(..)")
    }
}

/// `α w_xx + 2β w_xy + γ w_yy + a1 w_x² + b1 w_x w_y + c1 w_y² + a w_x + b w_y + c w + d = 0`.
#[derive(Clone, Debug)]
pub struct EllipticCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub a1: Coefficient,
    pub b1: Coefficient,
    pub c1: Coefficient,
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
    pub d: Coefficient,
}

impl EllipticCoeffs {
    /// Principal part only; lower-order coefficients start at zero.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let ec = EllipticCoeffs {
            alpha,
            beta,
            gamma,
            a1: Coefficient::zero(),
            b1: Coefficient::zero(),
            c1: Coefficient::zero(),
            a: Coefficient::zero(),
            b: Coefficient::zero(),
            c: Coefficient::zero(),
            d: Coefficient::zero(),
        };
        ec.validate()?;
        Ok(ec)
    }

    pub fn validate(&self) -> Result<()> {
        let det = self.alpha * self.gamma - self.beta * self.beta;
        if !(self.alpha > 0.0 && det > 0.0 && det.is_finite()) {
            return Err(Error::Parameter(format!(
                "principal part ({}, {}, {}) is not elliptic",
                self.alpha, self.beta, self.gamma
            )));
        }
        Ok(())
    }

    pub fn principal(&self) -> Matrix {
        [[self.alpha, self.beta], [self.beta, self.gamma]]
    }
}

/// Symmetric positive-definite square root of an SPD 2×2 matrix.
pub fn spd_sqrt(m: &Matrix) -> Matrix {
    let s = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
    let t = (m[0][0] + m[1][1] + 2.0 * s).sqrt();
    [
        [(m[0][0] + s) / t, m[0][1] / t],
        [m[1][0] / t, (m[1][1] + s) / t],
    ]
}

fn inverse(m: &Matrix) -> Matrix {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ]
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Sup norms of the primed coefficients over the sample set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PrimedSup {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Equation after `u = Q x` with `Q = A^{-1/2}`, so that the principal
/// part becomes `w_uu + w_vv`.
#[derive(Clone, Debug)]
pub struct ReducedCoeffs {
    /// `Q`, mapping original coordinates to reduced ones.
    pub substitution: Matrix,
    /// `P = Q⁻¹ = A^{1/2}`, so that `x = P u`.
    pub inverse_substitution: Matrix,
    pub sup: PrimedSup,
    pub w_sup: f64,
    pub m: f64,
    pub n: f64,
    coeffs: EllipticCoeffs,
}

/// Primed coefficient values at one point.
#[derive(Clone, Copy, Debug)]
pub struct Primed {
    pub a1: Complex64,
    pub b1: Complex64,
    pub c1: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

fn primed_at(ec: &EllipticCoeffs, q: &Matrix, x: Complex64) -> Primed {
    let (a1, b1, c1) = (ec.a1.eval(x), ec.b1.eval(x), ec.c1.eval(x));
    let (a, b) = (ec.a.eval(x), ec.b.eval(x));
    // w_x = Q11 W_u + Q21 W_v, w_y = Q12 W_u + Q22 W_v
    let (p, r) = (q[0][0], q[1][0]);
    let (s, t) = (q[0][1], q[1][1]);
    Primed {
        a1: a1 * p * p + b1 * p * s + c1 * s * s,
        c1: a1 * r * r + b1 * r * t + c1 * t * t,
        b1: a1 * 2.0 * p * r + b1 * (p * t + r * s) + c1 * 2.0 * s * t,
        a: a * p + b * s,
        b: a * r + b * t,
        c: ec.c.eval(x),
        d: ec.d.eval(x),
    }
}

impl ReducedCoeffs {
    /// Primed coefficients at reduced coordinates `u`.
    pub fn primed(&self, u: Complex64) -> Primed {
        primed_at(
            &self.coeffs,
            &self.substitution,
            apply_matrix(&self.inverse_substitution, u),
        )
    }

    /// `Q A Qᵀ`, the identity for an exact reduction.
    pub fn reduced_principal(&self) -> Matrix {
        let q = &self.substitution;
        matmul(&matmul(q, &self.coeffs.principal()), &transpose(q))
    }

    /// All terms of the reduced equation except `W_uu + W_vv`.
    pub fn lower_order(
        &self,
        u: Complex64,
        w: Complex64,
        wu: Complex64,
        wv: Complex64,
    ) -> Complex64 {
        let p = self.primed(u);
        p.a1 * wu * wu + p.b1 * wu * wv + p.c1 * wv * wv + p.a * wu + p.b * wv + p.c * w + p.d
    }

    pub fn is_identity(&self) -> bool {
        let q = &self.substitution;
        q[0][0] == 1.0 && q[1][1] == 1.0 && q[0][1] == 0.0 && q[1][0] == 0.0
    }
}

/// Reduces the principal part to the Laplacian and evaluates the constants
/// `M = (|a'|+|b'|)/2 + max(|a1'|, |c1'|) + |b1'|/2` and
/// `N = (|a'|+|b'|)/2 + |c'|·w_sup + |d'|` over the grid's active nodes
/// and boundary crossings.
pub fn reduce_elliptic(ec: &EllipticCoeffs, grid: &DiskGrid, w_sup: f64) -> Result<ReducedCoeffs> {
    ec.validate()?;
    let p = spd_sqrt(&ec.principal());
    let q = inverse(&p);
    let mut sup = PrimedSup::default();
    let points = grid
        .active_nodes()
        .iter()
        .map(|&i| grid.coord(i))
        .chain(grid.crossings().map(|a| a.point));
    for x in points {
        let v = primed_at(ec, &q, x);
        for (s, c) in [
            (&mut sup.a1, v.a1),
            (&mut sup.b1, v.b1),
            (&mut sup.c1, v.c1),
            (&mut sup.a, v.a),
            (&mut sup.b, v.b),
            (&mut sup.c, v.c),
            (&mut sup.d, v.d),
        ] {
            let n = c.norm();
            if !n.is_finite() {
                return Err(Error::Parameter(format!(
                    "coefficient is not finite at {x}"
                )));
            }
            *s = s.max(n);
        }
    }
    let first = (sup.a + sup.b) / 2.0;
    let m = first + sup.a1.max(sup.c1) + sup.b1 / 2.0;
    let n = first + sup.c * w_sup + sup.d;
    Ok(ReducedCoeffs {
        substitution: q,
        inverse_substitution: p,
        sup,
        w_sup,
        m,
        n,
        coeffs: ec.clone(),
    })
}

/// Solution of a general elliptic problem, held on the reduced domain.
#[derive(Clone, Debug)]
pub struct EllipticSolution {
    pub reduced: ReducedCoeffs,
    /// Grid over `Q Ω`; identical to the input grid when `Q = I`.
    pub grid: Arc<DiskGrid>,
    pub solution: Solution,
}

impl EllipticSolution {
    /// Original coordinates of a reduced-grid point.
    pub fn original_coord(&self, u: Complex64) -> Complex64 {
        apply_matrix(&self.reduced.inverse_substitution, u)
    }
}

/// Reduces, then runs damped Picard on `ΔW = -(lower-order terms)` over the
/// reduced domain. Boundary data is a function of the curve parameter,
/// which the linear change of variables preserves.
pub fn solve_general_elliptic(
    ec: &EllipticCoeffs,
    data: &BoundaryData,
    grid: &Arc<DiskGrid>,
    settings: &PicardSettings,
) -> Result<EllipticSolution> {
    let provisional = reduce_elliptic(ec, grid, 0.0)?;
    let rgrid = if provisional.is_identity() {
        grid.clone()
    } else {
        Arc::new(DiskGrid::new(
            grid.domain().transformed(provisional.substitution)?,
            grid.n(),
        )?)
    };
    let solution = picard(
        &rgrid,
        data,
        settings,
        "general elliptic Picard",
        |w, out| {
            for &idx in rgrid.active_nodes() {
                let (wu, wv) = partials_at(&rgrid, w, idx)?;
                out[idx] = -provisional.lower_order(rgrid.coord(idx), w[idx], wu, wv);
            }
            Ok(())
        },
        None,
    )?;
    let reduced = reduce_elliptic(ec, grid, solution.field.max_abs())?;
    Ok(EllipticSolution {
        reduced,
        grid: rgrid,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_principal_part() {
        let grid = DiskGrid::unit_disk(33).unwrap();
        let mut ec = EllipticCoeffs::new(1.0, 0.0, 1.0).unwrap();
        ec.a1 = Coefficient::constant(1.0);
        let r = reduce_elliptic(&ec, &grid, 1.0).unwrap();
        assert!(r.is_identity());
        assert_eq!((r.m, r.n), (1.0, 0.0));
        let r0 = reduce_elliptic(&EllipticCoeffs::new(1.0, 0.0, 1.0).unwrap(), &grid, 1.0).unwrap();
        assert_eq!((r0.m, r0.n), (0.0, 0.0));
    }

    #[test]
    fn diagonal_principal_part() {
        let grid = DiskGrid::unit_disk(33).unwrap();
        let r = reduce_elliptic(&EllipticCoeffs::new(4.0, 0.0, 1.0).unwrap(), &grid, 0.0).unwrap();
        let q = r.substitution;
        assert!((q[0][0] - 0.5).abs() < 1e-15 && (q[1][1] - 1.0).abs() < 1e-15);
        assert!(q[0][1].abs() < 1e-15 && q[1][0].abs() < 1e-15);
        // w = x² has 4 w_xx = 8; with x = 2u, W = 4u² and W_uu = 8
        let p = r.inverse_substitution;
        assert!((2.0 * p[0][0] * p[0][0] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn non_elliptic_rejected() {
        assert!(EllipticCoeffs::new(1.0, 1.0, 1.0).is_err());
        assert!(EllipticCoeffs::new(-1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn spd_sqrt_squares_back() {
        let m = [[3.0, 0.7], [0.7, 1.2]];
        let r = spd_sqrt(&m);
        let s = matmul(&r, &r);
        for i in 0..2 {
            for j in 0..2 {
                assert!((s[i][j] - m[i][j]).abs() < 1e-14);
            }
        }
        assert_eq!(r[0][1], r[1][0]);
    }

    #[test]
    fn constant_source_gives_paraboloid() {
        let grid = Arc::new(DiskGrid::unit_disk(65).unwrap());
        let mut ec = EllipticCoeffs::new(1.0, 0.0, 1.0).unwrap();
        ec.d = Coefficient::constant(-4.0);
        let sol = solve_general_elliptic(
            &ec,
            &BoundaryData::constant(Complex64::new(1.0, 0.0)),
            &grid,
            &PicardSettings::default(),
        )
        .unwrap();
        let err = sol
            .solution
            .field
            .iter()
            .map(|(_, z, w)| (w - z.norm_sqr()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn anisotropic_principal_part_on_reduced_grid() {
        // 4 w_xx + w_yy = 0 is solved by w = x² - 4y²; in u = x/2, v = y it reads 4(u² - v²)
        let grid = Arc::new(DiskGrid::unit_disk(65).unwrap());
        let ec = EllipticCoeffs::new(4.0, 0.0, 1.0).unwrap();
        let data =
            BoundaryData::new(|t| Complex64::new(t.cos().powi(2) - 4.0 * t.sin().powi(2), 0.0));
        let sol = solve_general_elliptic(&ec, &data, &grid, &PicardSettings::default()).unwrap();
        assert!(!Arc::ptr_eq(&sol.grid, &grid));
        let err = sol
            .solution
            .field
            .iter()
            .map(|(_, u, w)| {
                let x = sol.original_coord(u);
                (w.re - (x.re * x.re - 4.0 * x.im * x.im)).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }
}
