//! The critical toxin rate θ0 where det J(E2) = 1, and the linear data around it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_points;
use crate::model::{Complex, Matrix2, Parameters};
use crate::stability::char_poly;

/// Uniform scan resolution for the sign change of q(u*(θ)) − 1.
pub const SCAN_POINTS: usize = 512;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-14;
/// Required |q(u*(θ0)) − 1| at the returned root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-12;
/// |λ^m − 1| must exceed this for m = 1..=4.
pub const RESONANCE_TOL: f64 = 1e-9;
/// Perturbations of θ0 are accepted up to this fraction of θ0.
pub const PERTURBATION_GUARD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Model constants with θ = θ0.
    pub params: Parameters,
    pub theta0: f64,
    pub u_star: f64,
    pub v_star: f64,
    /// (1 − u*)(1 + 2cu*)/(1 + cu*)
    pub k: f64,
    /// (1 − u*)(1 + cu*)(β/(1 + cu*)² − θ0)
    pub m: f64,
    /// (1 + K)² − 4, negative
    pub d: f64,
    /// 1 − c + 2cu*
    pub s: f64,
    /// trace of J(E2) at θ0
    pub p: f64,
    /// All scan intervals in which q(u*) − 1 changed sign, in grid order.
    pub brackets: Vec<(f64, f64)>,
}

impl CriticalPoint {
    /// Build the critical data at a given θ0. Fails when E2 is absent there or p ≥ 2.
    pub fn at(c: f64, beta: f64, r: f64, theta0: f64) -> Result<Self> {
        let params = Parameters::new(c, beta, r, theta0)?;
        let e2 = fixed_points::e2(&params).ok_or(Error::ExistenceLost { theta: theta0 })?;
        let (p, _) = char_poly(&params, e2.u)?;
        if p >= 2.0 {
            return Err(Error::PConditionFailed { theta0, p });
        }
        let u = e2.u;
        let den = 1.0 + c * u;
        let k = (1.0 - u) * (1.0 + 2.0 * c * u) / den;
        Ok(Self {
            params,
            theta0,
            u_star: u,
            v_star: e2.v,
            k,
            m: (1.0 - u) * den * (beta / (den * den) - theta0),
            d: (1.0 + k) * (1.0 + k) - 4.0,
            s: 1.0 - c + 2.0 * c * u,
            p,
            brackets: Vec::new(),
        })
    }

    /// 1 + cu*
    pub fn den(&self) -> f64 {
        1.0 + self.params.c() * self.u_star
    }

    /// √(−D)
    pub fn sqrt_neg_d(&self) -> f64 {
        (-self.d).sqrt()
    }

    /// J(E2) at θ0.
    pub fn jacobian(&self) -> Matrix2 {
        Matrix2::new(self.k, -self.u_star / self.den(), self.m, 1.0)
    }

    /// (λ₁, λ₂) = ((1 + K − i√(−D))/2, (1 + K + i√(−D))/2).
    pub fn eigenpair(&self) -> (Complex, Complex) {
        let re = 0.5 * (1.0 + self.k);
        let im = 0.5 * self.sqrt_neg_d();
        (Complex::new(re, -im), Complex::new(re, im))
    }

    /// Eigenvector for (1 + K + i√(−D))/2:
    /// (2u*, (K − 1)(1 + cu*)) − i (0, √(−D)(1 + cu*)).
    pub fn eigenvector(&self) -> (Complex, [Complex; 2]) {
        let den = self.den();
        let v = [
            Complex::new(2.0 * self.u_star, 0.0),
            Complex::new((self.k - 1.0) * den, -self.sqrt_neg_d() * den),
        ];
        (self.eigenpair().1, v)
    }

    /// Columns are the negated imaginary and the real part of the eigenvector.
    pub fn transform(&self) -> Matrix2 {
        let den = self.den();
        Matrix2::new(
            0.0,
            2.0 * self.u_star,
            self.sqrt_neg_d() * den,
            (self.k - 1.0) * den,
        )
    }

    /// Closed-form inverse of [`CriticalPoint::transform`].
    pub fn transform_inverse(&self) -> Matrix2 {
        let w = self.sqrt_neg_d();
        Matrix2::new(
            (1.0 - self.k) / (2.0 * self.u_star * w),
            1.0 / (w * self.den()),
            1.0 / (2.0 * self.u_star),
            0.0,
        )
    }
}

fn q_gap(c: f64, beta: f64, r: f64, theta: f64) -> Result<Option<f64>> {
    let params = Parameters::new(c, beta, r, theta)?;
    Ok(match fixed_points::e2(&params) {
        Some(e2) => Some(char_poly(&params, e2.u)?.1 - 1.0),
        None => None,
    })
}

/// Find θ0 in `interval` with q(u*(θ0)) = 1.
///
/// Scans a uniform grid for sign changes of q(u*(θ)) − 1 between neighbouring
/// points that both carry E2, then bisects. The smallest root is returned and every
/// bracket found is listed in the result.
pub fn solve_theta0(c: f64, beta: f64, r: f64, interval: (f64, f64)) -> Result<CriticalPoint> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo {
        return Err(Error::NoSignChange { lo, hi });
    }
    let n = SCAN_POINTS;
    let grid: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect();
    let values = grid
        .iter()
        .map(|&t| q_gap(c, beta, r, t))
        .collect::<Result<Vec<_>>>()?;
    if values.iter().all(Option::is_none) {
        return Err(Error::ExistenceLost { theta: lo });
    }

    let mut brackets = Vec::new();
    for i in 0..n - 1 {
        if let (Some(a), Some(b)) = (values[i], values[i + 1]) {
            if a == 0.0 {
                brackets.push((grid[i], grid[i]));
            } else if a.signum() != b.signum() && b != 0.0 {
                brackets.push((grid[i], grid[i + 1]));
            }
        }
    }
    if let Some(Some(last)) = values.last() {
        if *last == 0.0 {
            brackets.push((hi, hi));
        }
    }

    let mut root = None;
    for &(a, b) in &brackets {
        let theta = bisect(c, beta, r, a, b)?;
        if let Some(gap) = q_gap(c, beta, r, theta)? {
            if gap.abs() < ROOT_RESIDUAL_TOL && root.is_none() {
                root = Some(theta);
            }
        }
    }
    let theta0 = root.ok_or(Error::NoSignChange { lo, hi })?;
    let mut cp = CriticalPoint::at(c, beta, r, theta0)?;
    cp.brackets = brackets;
    Ok(cp)
}

fn bisect(c: f64, beta: f64, r: f64, mut a: f64, mut b: f64) -> Result<f64> {
    if a == b {
        return Ok(a);
    }
    let gap = |t: f64| -> Result<f64> {
        q_gap(c, beta, r, t)?.ok_or(Error::ExistenceLost { theta: t })
    };
    let mut ga = gap(a)?;
    let mut gb = gap(b)?;
    for _ in 0..200 {
        if b - a <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = gap(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
            gb = gm;
        }
    }
    // secant estimate inside the final bracket
    let t = a - ga * (b - a) / (gb - ga);
    Ok(if t.is_finite() && a <= t && t <= b {
        t
    } else if ga.abs() <= gb.abs() {
        a
    } else {
        b
    })
}

/// The Jacobian of the shifted, perturbed system at the origin, with θ = θ0 + θ*.
pub fn perturbed_jacobian(cp: &CriticalPoint, theta_pert: f64) -> Matrix2 {
    let u = cp.u_star;
    let den = cp.den();
    let beta = cp.params.beta();
    Matrix2::new(
        cp.k,
        -u / den,
        (1.0 - u) * den * (beta / (den * den) - cp.theta0 - theta_pert),
        1.0 - theta_pert * u,
    )
}

/// (a(θ*), b(θ*)): trace and determinant of the perturbed Jacobian in closed form.
pub fn perturbed_trace_det(cp: &CriticalPoint, theta_pert: f64) -> (f64, f64) {
    let u = cp.u_star;
    let c = cp.params.c();
    let a = cp.k + 1.0 - theta_pert * u;
    let b = 1.0 - theta_pert * u * (1.0 - u) * (2.0 + 3.0 * c * u) / cp.den();
    (a, b)
}

/// (a ± i√(4b − a²))/2 at θ0 + θ*, plus-sign root first.
pub fn critical_eigenvalues(cp: &CriticalPoint, theta_pert: f64) -> Result<(Complex, Complex)> {
    let limit = PERTURBATION_GUARD * cp.theta0;
    if !theta_pert.is_finite() || theta_pert.abs() > limit {
        return Err(Error::PerturbationTooLarge { theta_pert, limit });
    }
    let (a, b) = perturbed_trace_det(cp, theta_pert);
    let gap = 4.0 * b - a * a;
    if gap <= 0.0 {
        return Err(Error::RealEigenvalues { theta_pert, gap });
    }
    let im = 0.5 * gap.sqrt();
    Ok((Complex::new(0.5 * a, im), Complex::new(0.5 * a, -im)))
}

/// d|λ|/dθ* at θ* = 0.
pub fn transversality(cp: &CriticalPoint) -> f64 {
    let u = cp.u_star;
    let c = cp.params.c();
    -u * (1.0 - u) * (2.0 + 3.0 * c * u) / (2.0 * cp.den())
}

/// The first m in 1..=4 with λ^m = 1, if any.
pub fn resonance_order(lambda: Complex) -> Option<u32> {
    (1..=4).find(|&m| (lambda.powu(m) - 1.0).norm() <= RESONANCE_TOL)
}

/// No strong resonance at θ0.
pub fn nondegeneracy(cp: &CriticalPoint) -> bool {
    let (l1, l2) = cp.eigenpair();
    resonance_order(l1).is_none() && resonance_order(l2).is_none()
}
