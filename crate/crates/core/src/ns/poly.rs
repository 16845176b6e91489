//! Bivariate polynomials of total degree at most three.

use serde::{Deserialize, Serialize};

use crate::model::Matrix2;

/// `coef[i][j]` multiplies x^i y^j; terms with i + j > 3 are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cubic {
    pub coef: [[f64; 4]; 4],
}

impl Cubic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn linear(a: f64, b: f64) -> Self {
        let mut p = Self::zero();
        p.coef[1][0] = a;
        p.coef[0][1] = b;
        p
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.coef[i][j]
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut sum = 0.0;
        for i in 0..4 {
            for j in 0..4 - i {
                sum += self.coef[i][j] * x.powi(i as i32) * y.powi(j as i32);
            }
        }
        sum
    }

    /// Product truncated at degree three.
    pub fn mul(&self, o: &Cubic) -> Cubic {
        let mut out = Cubic::zero();
        for i in 0..4 {
            for j in 0..4 - i {
                if self.coef[i][j] == 0.0 {
                    continue;
                }
                for k in 0..4 - i - j {
                    for l in 0..4 - i - j - k {
                        out.coef[i + k][j + l] += self.coef[i][j] * o.coef[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Cubic {
        let mut out = *self;
        out.coef.iter_mut().flatten().for_each(|c| *c *= s);
        out
    }

    pub fn add(&self, o: &Cubic) -> Cubic {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.coef[i][j] += o.coef[i][j];
            }
        }
        out
    }

    /// Drop the constant and linear terms.
    pub fn nonlinear(&self) -> Cubic {
        let mut out = *self;
        out.coef[0][0] = 0.0;
        out.coef[1][0] = 0.0;
        out.coef[0][1] = 0.0;
        out
    }

    /// p(t11·X + t12·Y, t21·X + t22·Y).
    pub fn substitute(&self, t: &Matrix2) -> Cubic {
        let x = Cubic::linear(t.a11, t.a12);
        let y = Cubic::linear(t.a21, t.a22);
        let mut x_pow = [Cubic::zero(); 4];
        let mut y_pow = [Cubic::zero(); 4];
        x_pow[0].coef[0][0] = 1.0;
        y_pow[0].coef[0][0] = 1.0;
        for n in 1..4 {
            x_pow[n] = x_pow[n - 1].mul(&x);
            y_pow[n] = y_pow[n - 1].mul(&y);
        }
        let mut out = Cubic::zero();
        for i in 0..4 {
            for j in 0..4 - i {
                if self.coef[i][j] != 0.0 {
                    out = out.add(&x_pow[i].mul(&y_pow[j]).scale(self.coef[i][j]));
                }
            }
        }
        out
    }
}

/// Partial derivatives at the origin up to third order, without the linear ones.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Partials {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
    pub xxx: f64,
    pub xxy: f64,
    pub xyy: f64,
    pub yyy: f64,
}

impl Partials {
    pub fn of(p: &Cubic) -> Self {
        Self {
            xx: 2.0 * p.coef[2][0],
            xy: p.coef[1][1],
            yy: 2.0 * p.coef[0][2],
            xxx: 6.0 * p.coef[3][0],
            xxy: 2.0 * p.coef[2][1],
            xyy: 2.0 * p.coef[1][2],
            yyy: 6.0 * p.coef[0][3],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_cubic() -> impl Strategy<Value = Cubic> {
        proptest::collection::vec(-2.0f64..2.0, 10).prop_map(|v| {
            let mut p = Cubic::zero();
            let mut it = v.into_iter();
            for i in 0..4 {
                for j in 0..4 - i {
                    p.coef[i][j] = it.next().unwrap();
                }
            }
            p
        })
    }

    #[test]
    fn substitute_simple() {
        // x² with x = X + 2Y
        let mut p = Cubic::zero();
        p.coef[2][0] = 1.0;
        let q = p.substitute(&Matrix2::new(1.0, 2.0, 0.0, 1.0));
        assert_eq!(q.coef[2][0], 1.0);
        assert_eq!(q.coef[1][1], 4.0);
        assert_eq!(q.coef[0][2], 4.0);
    }

    proptest! {
        #[test]
        fn substitution_commutes_with_evaluation(
            p in arb_cubic(),
            t in proptest::array::uniform4(-1.5f64..1.5),
            x in -1.0f64..1.0, y in -1.0f64..1.0
        ) {
            let m = Matrix2::new(t[0], t[1], t[2], t[3]);
            let (xs, ys) = m.apply(x, y);
            let lhs = p.substitute(&m).eval(x, y);
            let rhs = p.eval(xs, ys);
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()));
        }
    }
}
