//! Normal form coordinates (x, y)ᵀ = T (X, Y)ᵀ and the nonlinear parts F, G.

use serde::{Deserialize, Serialize};

use super::critical::CriticalPoint;
use super::poly::{Cubic, Partials};
use super::taylor::TaylorCoefficients;
use crate::model::Matrix2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalFormData {
    /// Linear part T⁻¹ J T.
    pub linear: Matrix2,
    /// F(X, Y) and G(X, Y), quadratic and cubic terms only.
    pub f: Cubic,
    pub g: Cubic,
    pub c02: f64,
    pub c03: f64,
    pub c11: f64,
    pub c12: f64,
    pub d02: f64,
    pub d03: f64,
    pub d11: f64,
    pub d12: f64,
    pub f_partials: Partials,
    pub g_partials: Partials,
}

impl NormalFormData {
    fn from_polys(linear: Matrix2, f: Cubic, g: Cubic) -> Self {
        Self {
            linear,
            f,
            g,
            c02: f.get(0, 2),
            c03: f.get(0, 3),
            c11: f.get(1, 1),
            c12: f.get(1, 2),
            d02: g.get(0, 2),
            d03: g.get(0, 3),
            d11: g.get(1, 1),
            d12: g.get(1, 2),
            f_partials: Partials::of(&f),
            g_partials: Partials::of(&g),
        }
    }

    fn from_coefficients(linear: Matrix2, c: [f64; 4], d: [f64; 4]) -> Self {
        let poly = |[q02, q03, q11, q12]: [f64; 4]| {
            let mut p = Cubic::zero();
            p.coef[0][2] = q02;
            p.coef[0][3] = q03;
            p.coef[1][1] = q11;
            p.coef[1][2] = q12;
            p
        };
        Self::from_polys(linear, poly(c), poly(d))
    }

    /// Cubic truncation of the transformed map at (X, Y).
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        let (lx, ly) = self.linear.apply(x, y);
        (lx + self.f.eval(x, y), ly + self.g.eval(x, y))
    }
}

/// Push the Taylor truncation through T: (F, G) = T⁻¹ ∘ (nonlinear part) ∘ T.
pub fn normal_form(cp: &CriticalPoint, tc: &TaylorCoefficients) -> NormalFormData {
    let t = cp.transform();
    let ti = cp.transform_inverse();
    let x_part = tc.x_poly().nonlinear().substitute(&t);
    let y_part = tc.y_poly().nonlinear().substitute(&t);
    let f = x_part.scale(ti.a11).add(&y_part.scale(ti.a12));
    let g = x_part.scale(ti.a21).add(&y_part.scale(ti.a22));
    let j = Matrix2::new(tc.a10, tc.a01, tc.b10, tc.b01);
    NormalFormData::from_polys(ti.mul(&j).mul(&t), f, g)
}

/// Reference closed forms for c02 … d12. Partials follow from the polynomial
/// forms (so G_XYY = 2·d12). Fed with the reference Taylor block this gives the
/// reference route; it is not the exact transformation (d02, d03 and c11
/// disagree with [`normal_form`] even on exact Taylor input).
pub fn reference_normal_form(cp: &CriticalPoint, tc: &TaylorCoefficients) -> NormalFormData {
    let c = cp.params.c();
    let beta = cp.params.beta();
    let u = cp.u_star;
    let s = cp.s;
    let w = cp.sqrt_neg_d();
    let den = cp.den();
    let den2 = den * den;
    let den3 = den2 * den;
    let cs = [
        u * u / (w * den) * tc.quadratic_combination(s),
        2.0 * u.powi(3) / (w * den) * tc.cubic_combination(s),
        u * (2.0 * beta - s) / den2,
        -2.0 * c * u * u * (2.0 * beta - s) / den3,
    ];
    let ds = [
        (2.0 * u * (c * (1.0 - u) - den2) - u * s) / den2,
        2.0 * c * u * u * (c * (1.0 - u) - s) / den3,
        -w / den,
        2.0 * c * u * w / den2,
    ];
    let k = cp.k;
    let linear = Matrix2::new(
        0.5 * (k + 1.0),
        (1.0 - k) * (k + 3.0) / (2.0 * w),
        -0.5 * w,
        0.5 * (k + 1.0),
    );
    NormalFormData::from_coefficients(linear, cs, ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::critical::solve_theta0;
    use crate::ns::taylor::{reference_taylor_coefficients, shifted_map, taylor_coefficients};

    fn example() -> CriticalPoint {
        solve_theta0(1.0, 4.0, 10.0 / 9.0, (0.1, 1.0)).unwrap()
    }

    fn near(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn exact_example_coefficients() {
        // frozen from a symbolic expansion of T⁻¹ ∘ V ∘ T at the example
        let s11 = 11f64.sqrt();
        let cp = example();
        let nf = normal_form(&cp, &taylor_coefficients(&cp));
        assert!(near(nf.c02, -s11 / 3.0));
        assert!(near(nf.c03, 56.0 * s11 / 297.0));
        assert!(near(nf.c11, 10.0 / 9.0));
        assert!(near(nf.c12, -28.0 / 27.0));
        assert!(near(nf.d02, -5.0 / 9.0));
        assert!(near(nf.d03, -8.0 / 27.0));
        assert!(near(nf.d11, -2.0 * s11 / 9.0));
        assert!(near(nf.d12, 4.0 * s11 / 27.0));
        for p in [nf.f_partials, nf.g_partials] {
            assert_eq!((p.xx, p.xxx, p.xxy), (0.0, 0.0, 0.0));
        }
        assert!(near(nf.linear.a11, 5.0 / 6.0) && near(nf.linear.a12, s11 / 6.0));
    }

    #[test]
    fn reference_example_coefficients() {
        let s11 = 11f64.sqrt();
        let cp = example();
        let nf = reference_normal_form(&cp, &reference_taylor_coefficients(&cp));
        assert!(near(nf.c02, -5.0 / (9.0 * s11)));
        assert!(near(nf.f_partials.yy, -10.0 / (9.0 * s11)));
        assert!(near(nf.g_partials.yy, -2.0));
        assert!(near(nf.d11, -s11 / 3.0 / 1.5));
        assert!(near(nf.g_partials.xyy, 2.0 * nf.d12));
        assert!(near(nf.f_partials.yyy, 6.0 * nf.c03));
        let exact = normal_form(&cp, &taylor_coefficients(&cp));
        assert!(nf.linear.max_abs_diff(&exact.linear) < 1e-12);
    }

    #[test]
    fn reference_block_agrees_where_it_should() {
        // on exact Taylor input the c02, c03, c12, d11, d12 entries are correct
        let cp = solve_theta0(0.8, 6.0, 1.5, (0.05, 3.0)).unwrap();
        let tc = taylor_coefficients(&cp);
        let exact = normal_form(&cp, &tc);
        let closed = reference_normal_form(&cp, &tc);
        for (a, b) in [
            (exact.c02, closed.c02),
            (exact.c03, closed.c03),
            (exact.c12, closed.c12),
            (exact.d11, closed.d11),
            (exact.d12, closed.d12),
        ] {
            assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
        assert!((exact.d02 - closed.d02).abs() > 1e-6);
        assert!((exact.d03 - closed.d03).abs() > 1e-6);
    }

    #[test]
    fn reconstruction_reproduces_shifted_truncation() {
        let cp = example();
        let tc = taylor_coefficients(&cp);
        let nf = normal_form(&cp, &tc);
        let t = cp.transform();
        let (px, py) = (tc.x_poly(), tc.y_poly());
        let ti = cp.transform_inverse();
        for i in 0..5 {
            for j in 0..5 {
                let x = -0.01 + 0.005 * i as f64;
                let y = -0.01 + 0.005 * j as f64;
                let (bx, by) = ti.apply(x, y);
                let (nx, ny) = nf.eval(bx, by);
                let (fx, fy) = t.apply(nx, ny);
                // the transformed cubic truncation equals the original one up to
                // the degree > 3 terms dropped when composing
                assert!((fx - px.eval(x, y)).abs() < 1e-8);
                assert!((fy - py.eval(x, y)).abs() < 1e-8);
                let (sx, sy) = shifted_map(&cp, x, y);
                assert!((fx - sx).abs() < 1e-6 && (fy - sy).abs() < 1e-6);
            }
        }
    }
}
