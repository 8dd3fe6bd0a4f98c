//! Exact arithmetic over `ℚ(i, α, β)` with `α², β²` rational, used as a
//! backstop for borderline rank decisions in the span tests.
//!
//! Elements are stored over the basis `{1, α, β, αβ}` with Gaussian-rational
//! coefficients. Every `f64` modulus is an exact rational, so any λ given as
//! a float induces exact `α² = 4 - 2λ` and `β² = 2λ - 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::model::{Mat6, PoonModel};
use crate::{Error, Result};

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QI {
    pub re: BigRational,
    pub im: BigRational,
}

impl QI {
    pub fn zero() -> Self {
        QI {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    pub fn one() -> Self {
        QI {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
    pub fn from_ints(re: i64, im: i64) -> Self {
        QI {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }
    pub fn from_rat(re: BigRational) -> Self {
        QI {
            re,
            im: BigRational::zero(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &QI) -> QI {
        QI {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &QI) -> QI {
        QI {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &QI) -> QI {
        QI {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn scale(&self, r: &BigRational) -> QI {
        QI {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
    fn neg(&self) -> QI {
        QI {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn inv(&self) -> Option<QI> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(QI {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

/// Element of `ℚ(i)(α, β)` over the basis `{1, α, β, αβ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq(pub [QI; 4]);

impl Fq {
    pub fn zero() -> Self {
        Fq([QI::zero(), QI::zero(), QI::zero(), QI::zero()])
    }
    pub fn one() -> Self {
        Fq([QI::one(), QI::zero(), QI::zero(), QI::zero()])
    }
    pub fn scalar(q: QI) -> Self {
        Fq([q, QI::zero(), QI::zero(), QI::zero()])
    }
    pub fn from_rat(r: BigRational) -> Self {
        Fq::scalar(QI::from_rat(r))
    }
    pub fn from_ints(re: i64, im: i64) -> Self {
        Fq::scalar(QI::from_ints(re, im))
    }
    /// `q·α`
    pub fn alpha(q: QI) -> Self {
        Fq([QI::zero(), q, QI::zero(), QI::zero()])
    }
    /// `q·β`
    pub fn beta(q: QI) -> Self {
        Fq([QI::zero(), QI::zero(), q, QI::zero()])
    }
    /// `q·αβ`
    pub fn alphabeta(q: QI) -> Self {
        Fq([QI::zero(), QI::zero(), QI::zero(), q])
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(QI::is_zero)
    }
}

/// The ambient field data: `α²` and `β²` as exact rationals.
#[derive(Clone, Debug)]
pub struct ExactField {
    pub a2: BigRational,
    pub b2: BigRational,
}

fn is_square_in_qi(x: &BigRational) -> bool {
    // x is a square in ℚ(i) iff |x| is a square in ℚ
    let abs = x.abs();
    let is_sq = |n: &BigInt| {
        if n.is_zero() {
            return true;
        }
        let r = n.sqrt();
        &(&r * &r) == n
    };
    is_sq(abs.numer()) && is_sq(abs.denom())
}

impl ExactField {
    /// Builds the field for a modulus λ (any finite `f64` is exact).
    pub fn for_lambda(lambda: f64) -> Result<ExactField> {
        let lam = BigRational::from_float(lambda)
            .ok_or_else(|| Error::Exact("λ is not finite".into()))?;
        let two = BigRational::from_integer(BigInt::from(2));
        let four = BigRational::from_integer(BigInt::from(4));
        let a2 = &four - &two * &lam;
        let b2 = &two * &lam - &two;
        if a2.is_zero() || b2.is_zero() {
            return Err(Error::Exact("degenerate modulus".into()));
        }
        for x in [&a2, &b2, &(&a2 * &b2)] {
            if is_square_in_qi(x) {
                return Err(Error::Exact(format!(
                    "field tower degenerates: {x} is a square in Q(i)"
                )));
            }
        }
        Ok(ExactField { a2, b2 })
    }

    pub fn add(&self, x: &Fq, y: &Fq) -> Fq {
        Fq(std::array::from_fn(|i| x.0[i].add(&y.0[i])))
    }

    pub fn sub(&self, x: &Fq, y: &Fq) -> Fq {
        Fq(std::array::from_fn(|i| x.0[i].sub(&y.0[i])))
    }

    pub fn neg(&self, x: &Fq) -> Fq {
        Fq(std::array::from_fn(|i| x.0[i].neg()))
    }

    pub fn mul(&self, x: &Fq, y: &Fq) -> Fq {
        // (c0 + c1 α + c2 β + c3 αβ)(d0 + d1 α + d2 β + d3 αβ)
        let (a, b) = (&self.a2, &self.b2);
        let ab = a * b;
        let c = &x.0;
        let d = &y.0;
        let t = |i: usize, j: usize| c[i].mul(&d[j]);
        let e0 = t(0, 0)
            .add(&t(1, 1).scale(a))
            .add(&t(2, 2).scale(b))
            .add(&t(3, 3).scale(&ab));
        let e1 = t(0, 1)
            .add(&t(1, 0))
            .add(&t(2, 3).scale(b))
            .add(&t(3, 2).scale(b));
        let e2 = t(0, 2)
            .add(&t(2, 0))
            .add(&t(1, 3).scale(a))
            .add(&t(3, 1).scale(a));
        let e3 = t(0, 3).add(&t(3, 0)).add(&t(1, 2)).add(&t(2, 1));
        Fq([e0, e1, e2, e3])
    }

    /// Inverse through the quadratic tower; `None` for zero (and would fail
    /// on a zero divisor, which the constructor's square checks exclude).
    pub fn inv(&self, x: &Fq) -> Option<Fq> {
        if x.is_zero() {
            return None;
        }
        // x = u + vβ with u, v ∈ K = ℚ(i)(α): x⁻¹ = (u - vβ)/(u² - β²v²)
        let u = [x.0[0].clone(), x.0[1].clone()];
        let v = [x.0[2].clone(), x.0[3].clone()];
        let k_mul = |p: &[QI; 2], q: &[QI; 2]| -> [QI; 2] {
            [
                p[0].mul(&q[0]).add(&p[1].mul(&q[1]).scale(&self.a2)),
                p[0].mul(&q[1]).add(&p[1].mul(&q[0])),
            ]
        };
        let k_sub = |p: &[QI; 2], q: &[QI; 2]| -> [QI; 2] { [p[0].sub(&q[0]), p[1].sub(&q[1])] };
        let k_inv = |p: &[QI; 2]| -> Option<[QI; 2]> {
            // (p0 + p1 α)⁻¹ = (p0 - p1 α)/(p0² - α² p1²)
            let den = p[0].mul(&p[0]).sub(&p[1].mul(&p[1]).scale(&self.a2));
            let d = den.inv()?;
            Some([p[0].mul(&d), p[1].mul(&d).neg()])
        };
        let v_b2 = [v[0].scale(&self.b2), v[1].scale(&self.b2)];
        let den = k_sub(&k_mul(&u, &u), &k_mul(&v_b2, &v));
        let dinv = k_inv(&den)?;
        let num_u = k_mul(&u, &dinv);
        let num_v = k_mul(&v, &dinv);
        Some(Fq([
            num_u[0].clone(),
            num_u[1].clone(),
            num_v[0].neg(),
            num_v[1].neg(),
        ]))
    }

    /// Exact rank by fraction-free-ish Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<Fq>]) -> Result<usize> {
        let mut m: Vec<Vec<Fq>> = rows.to_vec();
        let nrows = m.len();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..ncols {
            let Some(piv) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, piv);
            let inv = self
                .inv(&m[row][col].clone())
                .ok_or_else(|| Error::Exact("zero divisor during elimination".into()))?;
            for cix in col..ncols {
                m[row][cix] = self.mul(&m[row][cix], &inv);
            }
            for r in 0..nrows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for cix in col..ncols {
                        let t = self.mul(&f, &m[row][cix]);
                        m[r][cix] = self.sub(&m[r][cix], &t);
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == nrows {
                break;
            }
        }
        Ok(rank)
    }
}

pub type ExactMat6 = [[Fq; 6]; 6];
pub type ExactForm = [[Fq; 6]; 6];

pub fn exact_zero6() -> ExactMat6 {
    std::array::from_fn(|_| std::array::from_fn(|_| Fq::zero()))
}

/// The two quadratic forms with exact coefficients (doubled to clear the
/// 1/2's: spans are unaffected by scaling).
pub fn exact_forms(lambda: f64) -> Result<(ExactForm, ExactForm)> {
    let lam = BigRational::from_float(lambda).ok_or_else(|| Error::Exact("bad λ".into()))?;
    let mut hinf = exact_zero6();
    let one = Fq::one();
    hinf[0][1] = one.clone();
    hinf[1][0] = one.clone();
    hinf[2][2] = Fq::from_ints(2, 0);
    hinf[3][3] = Fq::from_ints(2, 0);
    hinf[4][5] = one.clone();
    hinf[5][4] = one.clone();
    let mut h0 = exact_zero6();
    h0[0][1] = Fq::from_ints(2, 0);
    h0[1][0] = Fq::from_ints(2, 0);
    h0[2][2] = Fq::from_rat(&lam + &lam);
    h0[3][3] = Fq::from_ints(3, 0);
    h0[4][5] = one.clone();
    h0[5][4] = one;
    Ok((h0, hinf))
}

fn compose_form(field: &ExactField, form: &ExactForm, u: &ExactMat6) -> ExactForm {
    // Uᵀ A U
    let mut au = exact_zero6();
    for i in 0..6 {
        for j in 0..6 {
            let mut s = Fq::zero();
            for k in 0..6 {
                s = field.add(&s, &field.mul(&form[i][k], &u[k][j]));
            }
            au[i][j] = s;
        }
    }
    let mut result = exact_zero6();
    for i in 0..6 {
        for j in 0..6 {
            let mut s = Fq::zero();
            for k in 0..6 {
                s = field.add(&s, &field.mul(&u[k][i], &au[k][j]));
            }
            result[i][j] = s;
        }
    }
    result
}

fn coeff_vec(form: &ExactForm, field: &ExactField) -> Vec<Fq> {
    let mut v = Vec::with_capacity(21);
    for i in 0..6 {
        for j in i..6 {
            if i == j {
                v.push(form[i][j].clone());
            } else {
                v.push(field.add(&form[i][j], &form[j][i]));
            }
        }
    }
    v
}

/// Exact span-preservation test.
pub fn span_preserved_exact(lambda: f64, u: &ExactMat6) -> Result<bool> {
    let field = ExactField::for_lambda(lambda)?;
    let (h0, hinf) = exact_forms(lambda)?;
    let rows = vec![
        coeff_vec(&h0, &field),
        coeff_vec(&hinf, &field),
        coeff_vec(&compose_form(&field, &h0, u), &field),
        coeff_vec(&compose_form(&field, &hinf, u), &field),
    ];
    Ok(field.rank(&rows)? == 2)
}

/// The generator `Λ` with exact entries.
pub fn exact_lambda_matrix() -> ExactMat6 {
    let mut m = exact_zero6();
    m[0][4] = Fq::beta(QI::one());
    m[1][5] = Fq::beta(QI::from_ints(-1, 0));
    m[2][3] = Fq::from_ints(0, -1);
    m[3][2] = Fq::alphabeta(QI::from_ints(0, 1));
    m[4][0] = Fq::alpha(QI::one());
    m[5][1] = Fq::alpha(QI::from_ints(-1, 0));
    m
}

/// `Λ₁` and `Λ₂` with exact entries.
pub fn exact_involution_matrices() -> (ExactMat6, ExactMat6) {
    let mut l1 = exact_zero6();
    l1[0][0] = Fq::one();
    l1[1][1] = Fq::one();
    l1[2][2] = Fq::one();
    l1[3][3] = Fq::from_ints(-1, 0);
    l1[4][5] = Fq::one();
    l1[5][4] = Fq::one();
    let mut l2 = exact_zero6();
    l2[0][1] = Fq::one();
    l2[1][0] = Fq::one();
    l2[2][2] = Fq::one();
    l2[3][3] = Fq::from_ints(-1, 0);
    l2[4][4] = Fq::one();
    l2[5][5] = Fq::one();
    (l1, l2)
}

/// A float matrix whose entries are (close to) elements of the field with
/// small denominators cannot be converted faithfully in general, so exact
/// checks only run on exactly-representable matrices. This helper builds the
/// exact representative of a component at phase 0.
pub fn exact_component_matrix(spec: crate::model::ComponentSpec) -> ExactMat6 {
    let mut m = exact_zero6();
    if !spec.case_ii {
        let (r0, c0) = (0, 0);
        if spec.a_off {
            m[r0][c0 + 1] = Fq::one();
            m[r0 + 1][c0] = Fq::one();
        } else {
            m[r0][c0] = Fq::one();
            m[r0 + 1][c0 + 1] = Fq::one();
        }
        m[2][2] = Fq::one();
        m[3][3] = if spec.a22_alt {
            Fq::from_ints(-1, 0)
        } else {
            Fq::one()
        };
        if spec.b_off {
            m[4][5] = Fq::one();
            m[5][4] = Fq::one();
        } else {
            m[4][4] = Fq::one();
            m[5][5] = Fq::one();
        }
    } else {
        // a = β, b = α at phase 0
        if spec.a_off {
            m[0][5] = Fq::beta(QI::one());
            m[1][4] = Fq::beta(QI::from_ints(-1, 0));
        } else {
            m[0][4] = Fq::beta(QI::one());
            m[1][5] = Fq::beta(QI::from_ints(-1, 0));
        }
        if spec.b_off {
            m[4][1] = Fq::alpha(QI::one());
            m[5][0] = Fq::alpha(QI::from_ints(-1, 0));
        } else {
            m[4][0] = Fq::alpha(QI::one());
            m[5][1] = Fq::alpha(QI::from_ints(-1, 0));
        }
        m[2][3] = if spec.a22_alt {
            Fq::from_ints(0, 1)
        } else {
            Fq::from_ints(0, -1)
        };
        m[3][2] = Fq::alphabeta(QI::from_ints(0, 1));
    }
    m
}

/// Convenience: exact evaluation of the field moduli for reporting.
pub fn moduli_of(model: &PoonModel) -> (f64, f64) {
    (model.alpha, model.beta)
}

/// Upgrades this module's verdicts against the floating predicate on an
/// exactly-representable matrix.
pub fn agrees_with_float(lambda: f64, u_exact: &ExactMat6, u_float: &Mat6) -> Result<bool> {
    let exact = span_preserved_exact(lambda, u_exact)?;
    let m = crate::model::build_poon_model(lambda)?;
    let float = crate::model::span_preserved(u_float, &m, 1e-9);
    Ok(exact == float)
}
