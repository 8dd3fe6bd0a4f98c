//! Complex arithmetic over any [`Scalar`], represented as
//! `(re, im)` pairs so jets flow through unchanged.

use crate::dual::Scalar;

pub type Cx<S> = (S, S);

pub fn cx<S: Scalar>(re: f64, im: f64) -> Cx<S> {
    (S::from_f64(re), S::from_f64(im))
}

pub fn add<S: Scalar>(a: Cx<S>, b: Cx<S>) -> Cx<S> {
    (a.0 + b.0, a.1 + b.1)
}

pub fn sub<S: Scalar>(a: Cx<S>, b: Cx<S>) -> Cx<S> {
    (a.0 - b.0, a.1 - b.1)
}

pub fn mul<S: Scalar>(a: Cx<S>, b: Cx<S>) -> Cx<S> {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn conj<S: Scalar>(a: Cx<S>) -> Cx<S> {
    (a.0, -a.1)
}

pub fn norm_sq<S: Scalar>(a: Cx<S>) -> S {
    a.0 * a.0 + a.1 * a.1
}

pub fn div<S: Scalar>(a: Cx<S>, b: Cx<S>) -> Cx<S> {
    let q = norm_sq(b).recip();
    let n = mul(a, conj(b));
    (n.0 * q, n.1 * q)
}

pub fn scale<S: Scalar>(s: S, a: Cx<S>) -> Cx<S> {
    (s * a.0, s * a.1)
}

/// Principal square root. For inputs off the branch cut this is smooth and
/// jets propagate exactly; on the cut (im == 0, re < 0) the value-level branch
/// `i·sqrt(-re)` is returned, which only makes sense for plain `f64` calls.
pub fn sqrt<S: Scalar>(a: Cx<S>) -> Cx<S> {
    let (x, y) = a;
    if y.re() == 0.0 && x.re() < 0.0 {
        return (S::from_f64(0.0), (-x).sqrt());
    }
    let m = norm_sq(a).sqrt();
    let u = ((m + x) * S::from_f64(0.5)).sqrt();
    if u.re() == 0.0 {
        // re < 0 with infinitesimal im: fall back to the cut value.
        return (S::from_f64(0.0), (-x).sqrt());
    }
    let v = y / (u + u);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sqrt_squares_back() {
        for &(x, y) in &[(2.0, 3.0), (-1.0, 0.5), (0.3, -4.0), (-2.0, -0.1)] {
            let s = sqrt::<f64>((x, y));
            let sq = mul(s, s);
            assert_relative_eq!(sq.0, x, max_relative = 1e-12);
            assert_relative_eq!(sq.1, y, max_relative = 1e-12, epsilon = 1e-12);
            // principal branch keeps Re >= 0
            assert!(s.0 >= 0.0);
        }
    }

    #[test]
    fn sqrt_on_negative_real_axis() {
        let s = sqrt::<f64>((-4.0, 0.0));
        assert_relative_eq!(s.0, 0.0);
        assert_relative_eq!(s.1, 2.0);
    }
}
