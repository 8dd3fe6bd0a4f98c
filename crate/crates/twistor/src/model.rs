//! The quadric pair in CP⁵, its real structure and torus action, and the
//! span-preservation predicate that characterizes automorphisms of the
//! projective model.
//!
//! Homogeneous coordinates are ordered `(w₀, w₁, z₂, z₃, w₄, w₅)`. The model
//! is cut out by
//!
//! ```text
//! h∞ = w₀w₁ + z₂² + z₃² + w₄w₅,
//! h₀  = 2w₀w₁ + λ z₂² + (3/2) z₃² + w₄w₅,      3/2 < λ < 2,
//! ```
//!
//! with the four ordinary nodes `P₁, P̄₁, P₃, P̄₃` on the coordinate axes and
//! the moduli `α = √(4-2λ)`, `β = √(2λ-2)`, `0 < α < β`.

use num_complex::Complex64;

use crate::{Error, Result};

pub type C = Complex64;
pub type Vec6 = [C; 6];
pub type Mat6 = [[C; 6]; 6];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn zero6() -> Mat6 {
    [[C::new(0.0, 0.0); 6]; 6]
}

pub fn identity6() -> Mat6 {
    let mut m = zero6();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn mat_mul(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut out = zero6();
    for i in 0..6 {
        for k in 0..6 {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..6 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat6, v: &Vec6) -> Vec6 {
    let mut out = [c(0.0, 0.0); 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i] += a[i][j] * v[j];
        }
    }
    out
}

pub fn mat_transpose(a: &Mat6) -> Mat6 {
    let mut out = zero6();
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat_scale(s: C, a: &Mat6) -> Mat6 {
    let mut out = *a;
    for row in out.iter_mut() {
        for e in row.iter_mut() {
            *e *= s;
        }
    }
    out
}

pub fn mat_norm(a: &Mat6) -> f64 {
    a.iter().flatten().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
}

pub fn mat_sub(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut out = *a;
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

/// Inverse by Gaussian elimination with partial pivoting.
pub fn mat_inv(a: &Mat6) -> Result<Mat6> {
    let mut m = *a;
    let mut inv = identity6();
    for col in 0..6 {
        let mut piv = col;
        for r in col + 1..6 {
            if m[r][col].norm() > m[piv][col].norm() {
                piv = r;
            }
        }
        if m[piv][col].norm() < 1e-300 {
            return Err(Error::Numerical("singular 6x6 matrix".into()));
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        for j in 0..6 {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..6 {
            if r != col {
                let f = m[r][col];
                if f.norm_sqr() != 0.0 {
                    for j in 0..6 {
                        let mcj = m[col][j];
                        let icj = inv[col][j];
                        m[r][j] -= f * mcj;
                        inv[r][j] -= f * icj;
                    }
                }
            }
        }
    }
    Ok(inv)
}

/// Projective equality of nonzero vectors.
pub fn projectively_equal(a: &Vec6, b: &Vec6, tol: f64) -> bool {
    let ia = (0..6)
        .max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).unwrap())
        .unwrap();
    if a[ia].norm() == 0.0 || b[ia].norm() == 0.0 {
        return false;
    }
    let s = a[ia] / b[ia];
    let scale = a.iter().map(|e| e.norm()).fold(0.0, f64::max);
    (0..6).all(|i| (a[i] - s * b[i]).norm() <= tol * scale.max(1.0))
}

/// Projective equality of matrices (`a = μ b`).
pub fn mat_projectively_equal(a: &Mat6, b: &Mat6, tol: f64) -> bool {
    let mut best = (0usize, 0usize);
    let mut bestn = -1.0;
    for i in 0..6 {
        for j in 0..6 {
            if a[i][j].norm() > bestn {
                bestn = a[i][j].norm();
                best = (i, j);
            }
        }
    }
    if bestn == 0.0 || b[best.0][best.1].norm() == 0.0 {
        return mat_norm(a) <= tol && mat_norm(b) <= tol;
    }
    let mu = a[best.0][best.1] / b[best.0][best.1];
    mat_norm(&mat_sub(a, &mat_scale(mu, b))) <= tol * mat_norm(a).max(1.0)
}

/// Rank of a complex matrix given as rows, with a relative pivot threshold.
pub fn rank_complex(rows: &[Vec<C>], tol: f64) -> usize {
    let mut m: Vec<Vec<C>> = rows
        .iter()
        .map(|r| {
            let scale = r.iter().map(|e| e.norm()).fold(0.0, f64::max);
            if scale > 0.0 {
                r.iter().map(|e| e / scale).collect()
            } else {
                r.clone()
            }
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let mut piv = row;
        for r in row..nrows {
            if m[r][col].norm() > m[piv][col].norm() {
                piv = r;
            }
        }
        if row >= nrows || m[piv][col].norm() <= tol {
            continue;
        }
        m.swap(row, piv);
        let d = m[row][col];
        for cix in col..ncols {
            m[row][cix] /= d;
        }
        for r in 0..nrows {
            if r != row {
                let f = m[r][col];
                if f.norm() > 0.0 {
                    for cix in col..ncols {
                        let v = m[row][cix];
                        m[r][cix] -= f * v;
                    }
                }
            }
        }
        row += 1;
        rank += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// quadratic forms
// ---------------------------------------------------------------------------

/// A quadratic form on C⁶, stored as a symmetric coefficient matrix.
#[derive(Clone, Debug)]
pub struct QForm6(pub Mat6);

impl QForm6 {
    pub fn eval(&self, v: &Vec6) -> C {
        let mut s = c(0.0, 0.0);
        for i in 0..6 {
            for j in 0..6 {
                s += v[i] * self.0[i][j] * v[j];
            }
        }
        s
    }

    /// `h ∘ U`, i.e. the form `v ↦ h(Uv)`, with matrix `Uᵀ A U`.
    pub fn compose(&self, u: &Mat6) -> QForm6 {
        let ut = mat_transpose(u);
        QForm6(mat_mul(&ut, &mat_mul(&self.0, u)))
    }

    /// Upper-triangle coefficient vector (21 entries).
    pub fn coeff_vec(&self) -> Vec<C> {
        let mut v = Vec::with_capacity(21);
        for i in 0..6 {
            for j in i..6 {
                let e = if i == j {
                    self.0[i][j]
                } else {
                    self.0[i][j] + self.0[j][i]
                };
                v.push(e);
            }
        }
        v
    }
}

// ---------------------------------------------------------------------------
// the model
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PoonModel {
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub h0: QForm6,
    pub hinf: QForm6,
}

pub fn build_poon_model(lambda: f64) -> Result<PoonModel> {
    if !(lambda > 1.5 && lambda < 2.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let mut hinf = zero6();
    hinf[0][1] = c(0.5, 0.0);
    hinf[1][0] = c(0.5, 0.0);
    hinf[2][2] = c(1.0, 0.0);
    hinf[3][3] = c(1.0, 0.0);
    hinf[4][5] = c(0.5, 0.0);
    hinf[5][4] = c(0.5, 0.0);
    let mut h0 = zero6();
    h0[0][1] = c(1.0, 0.0);
    h0[1][0] = c(1.0, 0.0);
    h0[2][2] = c(lambda, 0.0);
    h0[3][3] = c(1.5, 0.0);
    h0[4][5] = c(0.5, 0.0);
    h0[5][4] = c(0.5, 0.0);
    Ok(PoonModel {
        lambda,
        alpha: (4.0 - 2.0 * lambda).sqrt(),
        beta: (2.0 * lambda - 2.0).sqrt(),
        h0: QForm6(h0),
        hinf: QForm6(hinf),
    })
}

impl PoonModel {
    /// The four ordinary nodes `P₁, P̄₁, P₃, P̄₃`.
    pub fn singular_points(&self) -> [Vec6; 4] {
        let e = |i: usize| {
            let mut v = [c(0.0, 0.0); 6];
            v[i] = c(1.0, 0.0);
            v
        };
        [e(0), e(1), e(4), e(5)]
    }

    /// Rank of the 2×6 Jacobian of `(h₀, h∞)` at a point.
    pub fn jacobian_rank(&self, v: &Vec6, tol: f64) -> usize {
        let grad = |q: &QForm6| -> Vec<C> {
            (0..6)
                .map(|i| {
                    let mut s = c(0.0, 0.0);
                    for j in 0..6 {
                        s += (q.0[i][j] + q.0[j][i]) * v[j];
                    }
                    s
                })
                .collect()
        };
        rank_complex(&[grad(&self.h0), grad(&self.hinf)], tol)
    }
}

/// The anti-holomorphic real structure
/// `(w₀,…,w₅) ↦ (w̄₁, w̄₀, z̄₂, -z̄₃, -w̄₅, -w̄₄)`.
pub fn real_structure(v: &Vec6) -> Vec6 {
    [
        v[1].conj(),
        v[0].conj(),
        v[2].conj(),
        -v[3].conj(),
        -v[5].conj(),
        -v[4].conj(),
    ]
}

fn sigma_linear_part() -> Mat6 {
    // σ(v) = S v̄
    let mut s = zero6();
    s[0][1] = c(1.0, 0.0);
    s[1][0] = c(1.0, 0.0);
    s[2][2] = c(1.0, 0.0);
    s[3][3] = c(-1.0, 0.0);
    s[4][5] = c(-1.0, 0.0);
    s[5][4] = c(-1.0, 0.0);
    s
}

/// Whether `U ∘ σ = σ ∘ U` up to a projective scalar.
pub fn commutes_with_sigma(u: &Mat6, tol: f64) -> bool {
    let s = sigma_linear_part();
    // U∘σ has linear part U S, σ∘U has linear part S Ū
    let us = mat_mul(u, &s);
    let mut ubar = *u;
    for row in ubar.iter_mut() {
        for e in row.iter_mut() {
            *e = e.conj();
        }
    }
    let su = mat_mul(&s, &ubar);
    mat_projectively_equal(&us, &su, tol)
}

/// The torus element `diag(s, s⁻¹, 1, 1, t, t⁻¹)`.
pub fn torus_action(s: C, t: C) -> Mat6 {
    let mut m = identity6();
    m[0][0] = s;
    m[1][1] = s.inv();
    m[4][4] = t;
    m[5][5] = t.inv();
    m
}

/// `span{h₀∘U, h∞∘U} = span{h₀, h∞}` as quadratic forms.
pub fn span_preserved(u: &Mat6, model: &PoonModel, tol: f64) -> bool {
    let rows = vec![
        model.h0.coeff_vec(),
        model.hinf.coeff_vec(),
        model.h0.compose(u).coeff_vec(),
        model.hinf.compose(u).coeff_vec(),
    ];
    rank_complex(&rows, tol) == 2
}

// ---------------------------------------------------------------------------
// the 16 component representatives
// ---------------------------------------------------------------------------

/// One of the 16 connected components of the candidate automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    /// Case II interchanges the two node pairs.
    pub case_ii: bool,
    /// Case I: `A₂₂ = diag(1,-1)` instead of `I`;
    /// Case II: `A₂₂ = A₂₂⁺` instead of `A₂₂⁻`.
    pub a22_alt: bool,
    /// First corner block off-diagonal.
    pub a_off: bool,
    /// Last corner block off-diagonal.
    pub b_off: bool,
}

impl ComponentSpec {
    pub fn all() -> Vec<ComponentSpec> {
        let mut v = Vec::with_capacity(16);
        for &case_ii in &[false, true] {
            for &a22_alt in &[false, true] {
                for &a_off in &[false, true] {
                    for &b_off in &[false, true] {
                        v.push(ComponentSpec {
                            case_ii,
                            a22_alt,
                            a_off,
                            b_off,
                        });
                    }
                }
            }
        }
        v
    }

    pub fn label(&self) -> String {
        format!(
            "{}{}{}{}",
            if self.case_ii { "II" } else { "I" },
            if self.a22_alt { "-alt" } else { "-std" },
            if self.a_off { "-aOff" } else { "-aDiag" },
            if self.b_off { "-bOff" } else { "-bDiag" },
        )
    }
}

fn corner_block(m: &mut Mat6, row: usize, col: usize, diag: (C, C), off: bool) {
    if off {
        m[row][col + 1] = diag.0;
        m[row + 1][col] = diag.1;
    } else {
        m[row][col] = diag.0;
        m[row + 1][col + 1] = diag.1;
    }
}

/// Representative matrix of a component, with free phases for the corner
/// parameters.
pub fn component_matrix(
    model: &PoonModel,
    spec: ComponentSpec,
    phase_a: f64,
    phase_b: f64,
) -> Mat6 {
    let mut m = zero6();
    if !spec.case_ii {
        let a = C::from_polar(1.0, phase_a);
        let b = C::from_polar(1.0, phase_b);
        corner_block(&mut m, 0, 0, (a, a.conj()), spec.a_off);
        corner_block(&mut m, 4, 4, (b, b.conj()), spec.b_off);
        m[2][2] = c(1.0, 0.0);
        m[3][3] = if spec.a22_alt {
            c(-1.0, 0.0)
        } else {
            c(1.0, 0.0)
        };
    } else {
        let a = C::from_polar(model.beta, phase_a);
        let b = C::from_polar(model.alpha, phase_b);
        corner_block(&mut m, 0, 4, (a, -a.conj()), spec.a_off);
        corner_block(&mut m, 4, 0, (b, -b.conj()), spec.b_off);
        let ab = model.alpha * model.beta;
        // A₂₂^± = i [[0, ±1], [αβ, 0]]
        m[2][3] = if spec.a22_alt {
            c(0.0, 1.0)
        } else {
            c(0.0, -1.0)
        };
        m[3][2] = c(0.0, ab);
    }
    m
}

/// Identifies the component of a matrix that is (projectively) of one of the
/// 16 shapes; fails otherwise.
pub fn classify_component(m: &Mat6, model: &PoonModel, tol: f64) -> Result<ComponentSpec> {
    let block_norm = |r: usize, cc: usize| -> f64 {
        (m[r][cc].norm_sqr()
            + m[r][cc + 1].norm_sqr()
            + m[r + 1][cc].norm_sqr()
            + m[r + 1][cc + 1].norm_sqr())
        .sqrt()
    };
    let total = mat_norm(m);
    if total == 0.0 {
        return Err(Error::NotAnAutomorphism("zero matrix".into()));
    }
    let case_ii = block_norm(0, 4) > block_norm(0, 0);
    let (ar, ac, br, bc) = if case_ii { (0, 4, 4, 0) } else { (0, 0, 4, 4) };
    // block sparsity check
    let expected = [(ar, ac), (2, 2), (br, bc)];
    for r in (0..6).step_by(2) {
        for cc in (0..6).step_by(2) {
            let is_on = expected.contains(&(r, cc));
            if !is_on && block_norm(r, cc) > tol * total {
                return Err(Error::NotAnAutomorphism(format!(
                    "unexpected nonzero block at ({r}, {cc})"
                )));
            }
        }
    }
    let off_of = |r: usize, cc: usize| -> Result<bool> {
        let d = m[r][cc].norm() + m[r + 1][cc + 1].norm();
        let o = m[r][cc + 1].norm() + m[r + 1][cc].norm();
        if d > o {
            if o > tol * (d + o) {
                return Err(Error::NotAnAutomorphism(
                    "corner block not of pure type".into(),
                ));
            }
            Ok(false)
        } else {
            if d > tol * (d + o) {
                return Err(Error::NotAnAutomorphism(
                    "corner block not of pure type".into(),
                ));
            }
            Ok(true)
        }
    };
    let a_off = off_of(ar, ac)?;
    let b_off = off_of(br, bc)?;
    let a22_alt = if case_ii {
        // A₂₂ ∝ i[[0, ±1],[αβ, 0]]: ratio (m[2][3]·αβ) / m[3][2] = ±1
        let ab = model.alpha * model.beta;
        if m[3][2].norm() < tol * total {
            return Err(Error::NotAnAutomorphism("middle block degenerate".into()));
        }
        let ratio = m[2][3] * ab / m[3][2];
        if (ratio - 1.0).norm() < 0.5 {
            true
        } else if (ratio + 1.0).norm() < 0.5 {
            false
        } else {
            return Err(Error::NotAnAutomorphism(format!(
                "middle block ratio {ratio} is not ±1"
            )));
        }
    } else {
        if m[2][2].norm() < tol * total {
            return Err(Error::NotAnAutomorphism("middle block degenerate".into()));
        }
        let ratio = m[3][3] / m[2][2];
        if (ratio - 1.0).norm() < 0.5 {
            false
        } else if (ratio + 1.0).norm() < 0.5 {
            true
        } else {
            return Err(Error::NotAnAutomorphism(format!(
                "middle block ratio {ratio} is not ±1"
            )));
        }
    };
    Ok(ComponentSpec {
        case_ii,
        a22_alt,
        a_off,
        b_off,
    })
}
