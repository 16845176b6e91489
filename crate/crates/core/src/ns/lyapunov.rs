//! The discriminating quantity L and the stability of the bifurcating curve.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::critical::CriticalPoint;
use super::normal_form::NormalFormData;
use super::taylor::TaylorCoefficients;
use crate::error::{Error, Result};
use crate::model::Complex;

/// |L| at or below this is treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LCoefficients {
    pub l20: Complex,
    pub l11: Complex,
    pub l02: Complex,
    pub l21: Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// L < 0: an attracting invariant closed curve bifurcates for θ* > 0.
    AttractingCurve,
    /// L > 0: a repelling invariant closed curve bifurcates for θ* < 0.
    RepellingCurve,
    Degenerate,
}

impl Verdict {
    pub fn from_l(l: f64) -> Self {
        if !(l.abs() > DEGENERACY_TOL) {
            Verdict::Degenerate
        } else if l < 0.0 {
            Verdict::AttractingCurve
        } else {
            Verdict::RepellingCurve
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Verdict::AttractingCurve => "attracting invariant closed curve for θ*>0",
            Verdict::RepellingCurve => "repelling invariant closed curve for θ*<0",
            Verdict::Degenerate => "degenerate (L = 0), no conclusion",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

/// L20, L11, L02, L21 from the partial derivatives of F and G.
pub fn l_coefficients(nf: &NormalFormData) -> LCoefficients {
    let (f, g) = (&nf.f_partials, &nf.g_partials);
    LCoefficients {
        l20: Complex::new(f.xx - f.yy + 2.0 * g.xy, g.xx - g.yy - 2.0 * f.xy) / 8.0,
        l11: Complex::new(f.xx + f.yy, g.xx + g.yy) / 4.0,
        l02: Complex::new(f.xx - f.yy - 2.0 * g.xy, g.xx - g.yy + 2.0 * f.xy) / 8.0,
        l21: Complex::new(
            f.xxx + f.xyy + g.xxy + g.yyy,
            g.xxx + g.xyy - f.xxy - f.yyy,
        ) / 16.0,
    }
}

/// Simplified closed forms of L20 … L21. They agree with [`l_coefficients`]
/// applied to [`reference_normal_form`](super::reference_normal_form) except in Im L21,
/// where the term carrying 4b30 + s(2a30 − 2b21 − a21·s) has the opposite sign.
pub fn reference_l_coefficients(cp: &CriticalPoint, tc: &TaylorCoefficients) -> LCoefficients {
    let c = cp.params.c();
    let beta = cp.params.beta();
    let u = cp.u_star;
    let s = cp.s;
    let d = cp.d;
    let w = cp.sqrt_neg_d();
    let den = cp.den();
    let den2 = den * den;
    let den3 = den2 * den;
    let q2 = tc.quadratic_combination(s);
    let q3 = tc.cubic_combination(s);
    let e = c * (1.0 - u) - den2;
    LCoefficients {
        l20: Complex::new(
            0.25 * (d - u * u * q2) / (w * den),
            -0.5 * u * (e + beta - s) / den2,
        ),
        l11: Complex::new(
            0.5 * u * u * q2 / (w * den),
            0.5 * (2.0 * u * e - u * s) / den2,
        ),
        l02: Complex::new(
            -0.25 * (d + u * u * q2) / (w * den),
            -0.5 * u * (e - beta) / den2,
        ),
        l21: Complex::new(
            0.25 * c * u * u * (3.0 * c - 3.0 * c * u - 2.0 * s - 2.0 * beta) / den3,
            -0.25 * (c * d * u - 3.0 * u.powi(3) * den * q3) / (w * den2),
        ),
    }
}

/// L = −Re[(1 − 2λ₁)λ₂² / (1 − λ₁) · L11·L20] − ½|L11|² − |L02|² + Re(λ₂·L21).
///
/// `lambda1` is the critical eigenvalue with negative imaginary part.
pub fn discriminating_quantity(lc: &LCoefficients, lambda1: Complex, lambda2: Complex) -> f64 {
    let one = Complex::new(1.0, 0.0);
    let factor = (one - 2.0 * lambda1) * lambda2 * lambda2 / (one - lambda1);
    -(factor * lc.l11 * lc.l20).re - 0.5 * lc.l11.norm_sqr() - lc.l02.norm_sqr()
        + (lambda2 * lc.l21).re
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovSummary {
    pub coefficients: LCoefficients,
    pub l: f64,
    pub verdict: Verdict,
}

impl LyapunovSummary {
    pub fn new(cp: &CriticalPoint, coefficients: LCoefficients) -> Self {
        let (l1, l2) = cp.eigenpair();
        let l = discriminating_quantity(&coefficients, l1, l2);
        Self { coefficients, l, verdict: Verdict::from_l(l) }
    }
}

/// L-coefficients, L and verdict from a normal form. Errors when L is degenerate.
pub fn lyapunov_quantities(cp: &CriticalPoint, nf: &NormalFormData) -> Result<LyapunovSummary> {
    let summary = LyapunovSummary::new(cp, l_coefficients(nf));
    if summary.verdict == Verdict::Degenerate {
        return Err(Error::DegenerateL { l: summary.l });
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::critical::solve_theta0;
    use crate::ns::normal_form::{normal_form, reference_normal_form};
    use crate::ns::taylor::{reference_taylor_coefficients, taylor_coefficients};

    fn example() -> CriticalPoint {
        solve_theta0(1.0, 4.0, 10.0 / 9.0, (0.1, 1.0)).unwrap()
    }

    fn cnear(a: Complex, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn reference_closed_forms_at_standard_example() {
        let s11 = 11f64.sqrt();
        let cp = example();
        let lc = reference_l_coefficients(&cp, &reference_taylor_coefficients(&cp));
        assert!(cnear(lc.l20, -17.0 / (36.0 * s11), -5.0 / 36.0));
        assert!(cnear(lc.l11, -5.0 / (18.0 * s11), -0.5));
        assert!(cnear(lc.l02, 27.0 / (36.0 * s11), 23.0 / 36.0));
        assert!(cnear(lc.l21, -17.0 / 108.0, 159.0 / (162.0 * s11)));
        let summary = LyapunovSummary::new(&cp, lc);
        assert!((summary.l + 1495.0 / 1944.0).abs() < 1e-12);
        assert_eq!(summary.verdict, Verdict::AttractingCurve);
    }

    #[test]
    fn general_formula_on_reference_block() {
        let s11 = 11f64.sqrt();
        let cp = example();
        let tc = reference_taylor_coefficients(&cp);
        let general = l_coefficients(&reference_normal_form(&cp, &tc));
        let closed = reference_l_coefficients(&cp, &tc);
        for (a, b) in [(general.l20, closed.l20), (general.l11, closed.l11), (general.l02, closed.l02)] {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((general.l21.re - closed.l21.re).abs() < 1e-12);
        // Im L21 of the general formula is −31/(54√11), the closed form has +53/(54√11)
        assert!((general.l21.im + 31.0 / (54.0 * s11)).abs() < 1e-12);
        assert!((closed.l21.im - 53.0 / (54.0 * s11)).abs() < 1e-12);
    }

    #[test]
    fn exact_route_example() {
        let s11 = 11f64.sqrt();
        let cp = example();
        let nf = normal_form(&cp, &taylor_coefficients(&cp));
        let summary = lyapunov_quantities(&cp, &nf).unwrap();
        let lc = summary.coefficients;
        // frozen from a symbolic evaluation of the exact transformation
        assert!(cnear(lc.l20, s11 / 36.0, -5.0 / 36.0));
        assert!(cnear(lc.l11, -s11 / 6.0, -5.0 / 18.0));
        assert!(cnear(lc.l02, 5.0 * s11 / 36.0, 5.0 / 12.0));
        assert!(cnear(lc.l21, -13.0 / 54.0, -31.0 * s11 / 594.0));
        assert!((summary.l + 1933.0 / 2916.0).abs() < 1e-12);
        assert_eq!(summary.verdict, Verdict::AttractingCurve);
    }

    #[test]
    fn verdict_thresholds() {
        assert_eq!(Verdict::from_l(-0.5), Verdict::AttractingCurve);
        assert_eq!(Verdict::from_l(0.5), Verdict::RepellingCurve);
        assert_eq!(Verdict::from_l(1e-10), Verdict::Degenerate);
        assert_eq!(Verdict::from_l(f64::NAN), Verdict::Degenerate);
    }

    #[test]
    fn degenerate_l_is_an_error() {
        let cp = example();
        let mut nf = normal_form(&cp, &taylor_coefficients(&cp));
        nf.f_partials = Default::default();
        nf.g_partials = Default::default();
        assert!(matches!(lyapunov_quantities(&cp, &nf), Err(Error::DegenerateL { .. })));
    }

    #[test]
    fn l_is_reproducible() {
        let cp = example();
        let nf = normal_form(&cp, &taylor_coefficients(&cp));
        let a = lyapunov_quantities(&cp, &nf).unwrap().l;
        let b = lyapunov_quantities(&cp, &nf).unwrap().l;
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
