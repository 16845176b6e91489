//! Parameters, states and the plankton map
//!
//! ```text
//! u' = u(2 - u) - uv / (1 + cu)
//! v' = βuv / (1 + cu) + (1 - r)v - θuv
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Residual gate for positive fixed points: |cθu² − (β−rc−θ)u + r| ≤ this · max(1, |β|).
pub const FIXED_POINT_RESIDUAL_TOL: f64 = 1e-9;

/// The four positive model constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    c: f64,
    beta: f64,
    r: f64,
    theta: f64,
}

impl Parameters {
    pub fn new(c: f64, beta: f64, r: f64, theta: f64) -> Result<Self> {
        for (name, value) in [("c", c), ("beta", beta), ("r", r), ("theta", theta)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(Self { c, beta, r, theta })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Same constants with a different toxin rate.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.c, self.beta, self.r, theta)
    }

    /// Residual of cθu² − (β − rc − θ)u + r, the quadratic whose roots in (0, 1)
    /// are the coexistence abscissae.
    pub fn quadratic_residual(&self, u: f64) -> f64 {
        let Self { c, beta, r, theta } = *self;
        c * theta * u * u - (beta - r * c - theta) * u + r
    }

    pub(crate) fn check_fixed_abscissa(&self, u: f64) -> Result<()> {
        let residual = self.quadratic_residual(u);
        let tol = FIXED_POINT_RESIDUAL_TOL * self.beta.abs().max(1.0);
        if !u.is_finite() || !(residual.abs() <= tol) {
            return Err(Error::NotAFixedPoint { u, residual });
        }
        Ok(())
    }
}

/// A point (u, v) of the plane.
///
/// `State::new` requires a finite point of the closed positive quadrant. Iterates
/// produced by [`step`] are not clamped and may leave the quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    u: f64,
    v: f64,
}

impl State {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) || u < 0.0 || v < 0.0 {
            return Err(Error::InvalidState { u, v });
        }
        Ok(Self { u, v })
    }

    pub(crate) fn raw(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    /// Euclidean distance.
    pub fn distance(&self, other: &State) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }

    /// Max-norm distance.
    pub fn max_distance(&self, other: &State) -> f64 {
        (self.u - other.u).abs().max((self.v - other.v).abs())
    }
}

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }

    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a11 * x + self.a12 * y, self.a21 * x + self.a22 * y)
    }

    pub fn inverse(&self) -> Option<Matrix2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Matrix2::new(
            self.a22 / det,
            -self.a12 / det,
            -self.a21 / det,
            self.a11 / det,
        ))
    }

    pub fn max_abs_diff(&self, o: &Matrix2) -> f64 {
        [
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        ]
        .iter()
        .fold(0.0_f64, |m, d| m.max(d.abs()))
    }
}

/// One application of the map. Errors when the image overflows.
pub fn step(params: &Parameters, s: &State) -> Result<State> {
    let Parameters { c, beta, r, theta } = *params;
    let (u, v) = (s.u, s.v);
    let grazing = u * v / (1.0 + c * u);
    let next_u = u * (2.0 - u) - grazing;
    let next_v = beta * grazing + (1.0 - r) * v - theta * u * v;
    if !(next_u.is_finite() && next_v.is_finite()) {
        return Err(Error::NonFiniteResult { u, v });
    }
    Ok(State::raw(next_u, next_v))
}

/// Jacobian of the map at an arbitrary state.
pub fn jacobian(params: &Parameters, s: &State) -> Matrix2 {
    let Parameters { c, beta, r, theta } = *params;
    let (u, v) = (s.u, s.v);
    let den = 1.0 + c * u;
    Matrix2::new(
        2.0 - 2.0 * u - v / (den * den),
        -u / den,
        beta * v / (den * den) - theta * v,
        beta * u / den + 1.0 - r - theta * u,
    )
}

/// Jacobian at a coexistence fixed point, simplified with v = (1 − u)(1 + cu)
/// and the fixed-point quadratic (the lower-right entry is exactly 1).
pub fn jacobian_at_fixed(params: &Parameters, u_star: f64) -> Result<Matrix2> {
    params.check_fixed_abscissa(u_star)?;
    let Parameters { c, beta, theta, .. } = *params;
    let u = u_star;
    let den = 1.0 + c * u;
    Ok(Matrix2::new(
        (1.0 - u) * (1.0 + 2.0 * c * u) / den,
        -u / den,
        (1.0 - u) * den * (beta / (den * den) - theta),
        1.0,
    ))
}

/// v-coordinate of a coexistence fixed point with abscissa `u`.
pub fn coexistence_v(params: &Parameters, u: f64) -> f64 {
    (1.0 - u) * (1.0 + params.c * u)
}
