//! Forward-mode automatic differentiation in four variables.
//!
//! [`Dual4`] carries a value and a 4-component gradient; [`HyperDual4`] adds
//! the dense symmetric Hessian. Both implement [`Scalar`], so any function
//! written generically over `Scalar` can be evaluated, differentiated once,
//! or differentiated twice without rewriting the formula. Derivatives are
//! exact up to floating-point roundoff.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Arithmetic interface shared by `f64` and the jet types.
///
/// `re` exposes the value part, which is the only thing branch decisions are
/// allowed to look at inside generic code.
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn from_f64(v: f64) -> Self;
    fn re(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    /// `self.atan2(x)` with `self` playing the role of `y`.
    fn atan2(self, x: Self) -> Self;
    fn abs(self) -> Self;
    fn recip(self) -> Self {
        Self::from_f64(1.0) / self
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::from_f64(1.0),
            n if n < 0 => self.powi(-n).recip(),
            n => {
                let mut acc = self;
                for _ in 1..n {
                    acc = acc * self;
                }
                acc
            }
        }
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

/// First-order jet: value plus gradient with respect to four seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual4 {
    pub v: f64,
    pub d: [f64; 4],
}

impl Dual4 {
    pub fn constant(v: f64) -> Self {
        Dual4 { v, d: [0.0; 4] }
    }

    /// The `i`-th coordinate variable.
    pub fn var(v: f64, i: usize) -> Self {
        let mut d = [0.0; 4];
        d[i] = 1.0;
        Dual4 { v, d }
    }

    fn unary(self, f: f64, df: f64) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = df * self.d[k];
        }
        Dual4 { v: f, d }
    }

    fn binary(self, other: Self, f: f64, fa: f64, fb: f64) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = fa * self.d[k] + fb * other.d[k];
        }
        Dual4 { v: f, d }
    }
}

impl Add for Dual4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = self.d[k] + o.d[k];
        }
        Dual4 { v: self.v + o.v, d }
    }
}

impl Sub for Dual4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = self.d[k] - o.d[k];
        }
        Dual4 { v: self.v - o.v, d }
    }
}

impl Mul for Dual4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = self.d[k] * o.v + self.v * o.d[k];
        }
        Dual4 { v: self.v * o.v, d }
    }
}

impl Div for Dual4 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.v;
        self.binary(o, self.v * inv, inv, -self.v * inv * inv)
    }
}

impl Neg for Dual4 {
    type Output = Self;
    fn neg(self) -> Self {
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = -self.d[k];
        }
        Dual4 { v: -self.v, d }
    }
}

impl AddAssign for Dual4 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl SubAssign for Dual4 {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}
impl MulAssign for Dual4 {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Scalar for Dual4 {
    fn from_f64(v: f64) -> Self {
        Dual4::constant(v)
    }
    fn re(&self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.unary(s, 0.5 / s)
    }
    fn sin(self) -> Self {
        self.unary(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.unary(self.v.cos(), -self.v.sin())
    }
    fn atan2(self, x: Self) -> Self {
        let q = self.v * self.v + x.v * x.v;
        self.binary(x, self.v.atan2(x.v), x.v / q, -self.v / q)
    }
    fn abs(self) -> Self {
        if self.v >= 0.0 {
            self
        } else {
            -self
        }
    }
}

/// Second-order jet: value, gradient, and symmetric Hessian.
#[derive(Clone, Copy, Debug)]
pub struct HyperDual4 {
    pub v: f64,
    pub d: [f64; 4],
    pub h: [[f64; 4]; 4],
}

impl HyperDual4 {
    pub fn constant(v: f64) -> Self {
        HyperDual4 {
            v,
            d: [0.0; 4],
            h: [[0.0; 4]; 4],
        }
    }

    pub fn var(v: f64, i: usize) -> Self {
        let mut d = [0.0; 4];
        d[i] = 1.0;
        HyperDual4 {
            v,
            d,
            h: [[0.0; 4]; 4],
        }
    }

    /// Chain rule through a scalar function with derivatives `df`, `ddf`.
    fn unary(self, f: f64, df: f64, ddf: f64) -> Self {
        let mut d = [0.0; 4];
        let mut h = [[0.0; 4]; 4];
        for k in 0..4 {
            d[k] = df * self.d[k];
        }
        for k in 0..4 {
            for l in 0..4 {
                h[k][l] = df * self.h[k][l] + ddf * self.d[k] * self.d[l];
            }
        }
        HyperDual4 { v: f, d, h }
    }

    /// Chain rule through a two-argument function `h(a, b)` evaluated at
    /// `(self, other)`, given its first and second partials.
    #[allow(clippy::too_many_arguments)]
    fn binary(self, other: Self, f: f64, fa: f64, fb: f64, faa: f64, fab: f64, fbb: f64) -> Self {
        let mut d = [0.0; 4];
        let mut h = [[0.0; 4]; 4];
        for k in 0..4 {
            d[k] = fa * self.d[k] + fb * other.d[k];
        }
        for k in 0..4 {
            for l in 0..4 {
                h[k][l] = fa * self.h[k][l]
                    + fb * other.h[k][l]
                    + faa * self.d[k] * self.d[l]
                    + fab * (self.d[k] * other.d[l] + other.d[k] * self.d[l])
                    + fbb * other.d[k] * other.d[l];
            }
        }
        HyperDual4 { v: f, d, h }
    }
}

impl Add for HyperDual4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut r = self;
        r.v += o.v;
        for k in 0..4 {
            r.d[k] += o.d[k];
            for l in 0..4 {
                r.h[k][l] += o.h[k][l];
            }
        }
        r
    }
}

impl Sub for HyperDual4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut r = self;
        r.v -= o.v;
        for k in 0..4 {
            r.d[k] -= o.d[k];
            for l in 0..4 {
                r.h[k][l] -= o.h[k][l];
            }
        }
        r
    }
}

impl Mul for HyperDual4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut h = [[0.0; 4]; 4];
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = self.d[k] * o.v + self.v * o.d[k];
        }
        for k in 0..4 {
            for l in 0..4 {
                h[k][l] = self.h[k][l] * o.v
                    + self.v * o.h[k][l]
                    + self.d[k] * o.d[l]
                    + self.d[l] * o.d[k];
            }
        }
        HyperDual4 {
            v: self.v * o.v,
            d,
            h,
        }
    }
}

impl Div for HyperDual4 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.v;
        let inv2 = inv * inv;
        self.binary(
            o,
            self.v * inv,
            inv,
            -self.v * inv2,
            0.0,
            -inv2,
            2.0 * self.v * inv2 * inv,
        )
    }
}

impl Neg for HyperDual4 {
    type Output = Self;
    fn neg(self) -> Self {
        let mut r = self;
        r.v = -r.v;
        for k in 0..4 {
            r.d[k] = -r.d[k];
            for l in 0..4 {
                r.h[k][l] = -r.h[k][l];
            }
        }
        r
    }
}

impl AddAssign for HyperDual4 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl SubAssign for HyperDual4 {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}
impl MulAssign for HyperDual4 {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Scalar for HyperDual4 {
    fn from_f64(v: f64) -> Self {
        HyperDual4::constant(v)
    }
    fn re(&self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.unary(s, 0.5 / s, -0.25 / (s * self.v))
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.unary(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.unary(c, -s, -c)
    }
    fn atan2(self, x: Self) -> Self {
        // self = y. With q = x^2 + y^2:
        //   θ_y = x/q, θ_x = -y/q,
        //   θ_yy = -2xy/q², θ_yx = (y²-x²)/q², θ_xx = 2xy/q².
        let (y, xv) = (self.v, x.v);
        let q = xv * xv + y * y;
        let q2 = q * q;
        self.binary(
            x,
            y.atan2(xv),
            xv / q,
            -y / q,
            -2.0 * xv * y / q2,
            (y * y - xv * xv) / q2,
            2.0 * xv * y / q2,
        )
    }
    fn abs(self) -> Self {
        if self.v >= 0.0 {
            self
        } else {
            -self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn test_fn<S: Scalar>(x: &[S; 4]) -> S {
        // A blend of every primitive the geometry code uses.
        let a = x[0] * x[1] + x[2].sqrt() * x[3].sin();
        let b = x[1].atan2(x[0]) + (x[2] * x[2] + S::from_f64(1.0)).recip();
        a * a / (b + S::from_f64(3.0)) + x[3].cos() * x[0].powi(3)
    }

    fn eval(p: [f64; 4]) -> f64 {
        test_fn(&p)
    }

    #[test]
    fn dual_gradient_matches_finite_differences() {
        let p = [0.7, -0.4, 1.3, 0.9];
        let xs: [Dual4; 4] = std::array::from_fn(|i| Dual4::var(p[i], i));
        let jet = test_fn(&xs);
        let h = 1e-6;
        for i in 0..4 {
            let mut pp = p;
            let mut pm = p;
            pp[i] += h;
            pm[i] -= h;
            let fd = (eval(pp) - eval(pm)) / (2.0 * h);
            assert_relative_eq!(jet.d[i], fd, max_relative = 1e-7);
        }
        assert_relative_eq!(jet.v, eval(p), max_relative = 1e-14);
    }

    #[test]
    fn hyperdual_hessian_matches_finite_differences() {
        let p = [0.7, -0.4, 1.3, 0.9];
        let xs: [HyperDual4; 4] = std::array::from_fn(|i| HyperDual4::var(p[i], i));
        let jet = test_fn(&xs);
        let h = 1e-4;
        for i in 0..4 {
            for j in 0..4 {
                let mut pp = p;
                let mut pm = p;
                let mut mp = p;
                let mut mm = p;
                pp[i] += h;
                pp[j] += h;
                pm[i] += h;
                pm[j] -= h;
                mp[i] -= h;
                mp[j] += h;
                mm[i] -= h;
                mm[j] -= h;
                let fd = (eval(pp) - eval(pm) - eval(mp) + eval(mm)) / (4.0 * h * h);
                assert_relative_eq!(jet.h[i][j], fd, max_relative = 2e-4, epsilon = 1e-6);
            }
        }
        // Hessian symmetry is structural.
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(jet.h[i][j], jet.h[j][i], max_relative = 1e-12);
            }
        }
    }
}
