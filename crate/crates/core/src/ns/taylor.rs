//! Third-order Taylor expansion of the map shifted to E2, at θ = θ0.

use serde::{Deserialize, Serialize};

use super::critical::CriticalPoint;
use super::poly::Cubic;

/// Coefficients of x^i y^j in the two components of the shifted map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoefficients {
    pub a10: f64,
    pub a01: f64,
    pub a20: f64,
    pub a11: f64,
    pub a02: f64,
    pub a30: f64,
    pub a21: f64,
    pub a12: f64,
    pub a03: f64,
    pub b10: f64,
    pub b01: f64,
    pub b20: f64,
    pub b11: f64,
    pub b02: f64,
    pub b30: f64,
    pub b21: f64,
    pub b12: f64,
    pub b03: f64,
}

impl TaylorCoefficients {
    pub fn x_poly(&self) -> Cubic {
        let mut p = Cubic::zero();
        p.coef[1][0] = self.a10;
        p.coef[0][1] = self.a01;
        p.coef[2][0] = self.a20;
        p.coef[1][1] = self.a11;
        p.coef[0][2] = self.a02;
        p.coef[3][0] = self.a30;
        p.coef[2][1] = self.a21;
        p.coef[1][2] = self.a12;
        p.coef[0][3] = self.a03;
        p
    }

    pub fn y_poly(&self) -> Cubic {
        let mut p = Cubic::zero();
        p.coef[1][0] = self.b10;
        p.coef[0][1] = self.b01;
        p.coef[2][0] = self.b20;
        p.coef[1][1] = self.b11;
        p.coef[0][2] = self.b02;
        p.coef[3][0] = self.b30;
        p.coef[2][1] = self.b21;
        p.coef[1][2] = self.b12;
        p.coef[0][3] = self.b03;
        p
    }

    /// 4b20 + s(2a20 − 2b11 − a11·s)
    pub fn quadratic_combination(&self, s: f64) -> f64 {
        4.0 * self.b20 + s * (2.0 * self.a20 - 2.0 * self.b11 - self.a11 * s)
    }

    /// 4b30 + s(2a30 − 2b21 − a21·s)
    pub fn cubic_combination(&self, s: f64) -> f64 {
        4.0 * self.b30 + s * (2.0 * self.a30 - 2.0 * self.b21 - self.a21 * s)
    }
}

/// (x, y) ↦ V(x + u*, y + v*) − (u*, v*) at θ0.
pub fn shifted_map(cp: &CriticalPoint, x: f64, y: f64) -> (f64, f64) {
    let p = &cp.params;
    let (c, beta, r, theta) = (p.c(), p.beta(), p.r(), p.theta());
    let (u, v) = (x + cp.u_star, y + cp.v_star);
    let grazing = u * v / (1.0 + c * u);
    (
        u * (2.0 - u) - grazing - cp.u_star,
        beta * grazing + (1.0 - r) * v - theta * u * v - cp.v_star,
    )
}

/// Taylor coefficients of [`shifted_map`] at the origin.
pub fn taylor_coefficients(cp: &CriticalPoint) -> TaylorCoefficients {
    let c = cp.params.c();
    let beta = cp.params.beta();
    let u = cp.u_star;
    let den = cp.den();
    let den2 = den * den;
    let den3 = den2 * den;
    TaylorCoefficients {
        a10: (1.0 - u) * (1.0 + 2.0 * c * u) / den,
        a01: -u / den,
        a20: c * (1.0 - u) / den2 - 1.0,
        a11: -1.0 / den2,
        a02: 0.0,
        a30: -c * c * (1.0 - u) / den3,
        a21: c / den3,
        a12: 0.0,
        a03: 0.0,
        b10: (1.0 - u) * den * (beta / den2 - cp.theta0),
        b01: 1.0,
        b20: -beta * c * (1.0 - u) / den2,
        b11: beta / den2 - cp.theta0,
        b02: 0.0,
        b30: beta * c * c * (1.0 - u) / den3,
        b21: -beta * c / den3,
        b12: 0.0,
        b03: 0.0,
    }
}

/// The reference coefficient block. It differs from [`taylor_coefficients`]
/// in b20 (opposite sign) and b11 (no −θ0 term); the reference route
/// is built on these values.
pub fn reference_taylor_coefficients(cp: &CriticalPoint) -> TaylorCoefficients {
    let c = cp.params.c();
    let beta = cp.params.beta();
    let u = cp.u_star;
    let den2 = cp.den() * cp.den();
    TaylorCoefficients {
        b20: beta * c * (1.0 - u) / den2,
        b11: beta / den2,
        ..taylor_coefficients(cp)
    }
}
