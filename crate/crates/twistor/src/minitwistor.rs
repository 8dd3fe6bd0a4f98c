//! Linear projections onto the two quadric surfaces (the minitwistor spaces
//! of the two semi-free circle actions) and a deterministic sampler of the
//! quadric-intersection variety.
//!
//! Sampling intersects the variety with random projective 2-planes and
//! solves the resulting pair of conics by the degenerate-pencil method: a
//! root of `det(A - μB) = 0` gives a rank-≤2 member that splits into two
//! lines, and each line meets the second conic in two points.

use num_complex::Complex64;
use rand::Rng;
use selfdual::sample::rng_for;

use crate::model::{c, rank_complex, PoonModel, QForm6, Vec6};
use crate::{Error, Result};

pub type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Quotient by `G₁`: coordinates `(z₂, z₃, w₄, w₅)`.
    One,
    /// Quotient by `G₃`: coordinates `(w₀, w₁, z₂, z₃)`.
    Three,
}

/// The linear projection to CP³.
pub fn project(side: Side, v: &Vec6) -> [C; 4] {
    match side {
        Side::One => [v[2], v[3], v[4], v[5]],
        Side::Three => [v[0], v[1], v[2], v[3]],
    }
}

/// Coefficient matrix of the image quadric:
/// side 1: `α²z₂² + z₃² + 2w₄w₅`; side 3: `2w₀w₁ + β²z₂² + z₃²`.
pub fn image_quadric(side: Side, model: &PoonModel) -> [[C; 4]; 4] {
    let mut m = [[c(0.0, 0.0); 4]; 4];
    match side {
        Side::One => {
            m[0][0] = c(model.alpha * model.alpha, 0.0);
            m[1][1] = c(1.0, 0.0);
            m[2][3] = c(1.0, 0.0);
            m[3][2] = c(1.0, 0.0);
        }
        Side::Three => {
            m[0][1] = c(1.0, 0.0);
            m[1][0] = c(1.0, 0.0);
            m[2][2] = c(model.beta * model.beta, 0.0);
            m[3][3] = c(1.0, 0.0);
        }
    }
    m
}

pub fn image_quadric_eval(side: Side, model: &PoonModel, p: &[C; 4]) -> C {
    let m = image_quadric(side, model);
    let mut s = c(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            s += p[i] * m[i][j] * p[j];
        }
    }
    s
}

/// Nonsingularity of the image quadric (full-rank 4×4 coefficient matrix).
pub fn image_quadric_nonsingular(side: Side, model: &PoonModel, tol: f64) -> bool {
    let m = image_quadric(side, model);
    let rows: Vec<Vec<C>> = m.iter().map(|r| r.to_vec()).collect();
    rank_complex(&rows, tol) == 4
}

// ---------------------------------------------------------------------------
// variety sampling
// ---------------------------------------------------------------------------

type M3 = [[C; 3]; 3];

fn det3(m: &M3) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate3(m: &M3) -> M3 {
    let cof = |r: usize, cc: usize| -> C {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != cc).collect();
        let d =
            m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
        if (r + cc) % 2 == 0 {
            d
        } else {
            -d
        }
    };
    let mut adj = [[c(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            adj[i][j] = cof(j, i);
        }
    }
    adj
}

fn cross_matrix(p: &[C; 3]) -> M3 {
    [
        [c(0.0, 0.0), p[2], -p[1]],
        [-p[2], c(0.0, 0.0), p[0]],
        [p[1], -p[0], c(0.0, 0.0)],
    ]
}

/// Roots of a complex cubic `c3 x³ + c2 x² + c1 x + c0`.
fn cubic_roots(c3: C, c2: C, c1: C, c0: C) -> Vec<C> {
    if c3.norm() < 1e-13 * (c2.norm() + c1.norm() + c0.norm()) {
        // quadratic fallback
        if c2.norm() < 1e-300 {
            return vec![];
        }
        let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
        return vec![(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)];
    }
    let a = c2 / c3;
    let b = c1 / c3;
    let d = c0 / c3;
    // depressed cubic t³ + pt + q, x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3 = -q / 2.0 + disc;
    let u3b = -q / 2.0 - disc;
    let pick = if u3.norm() >= u3b.norm() { u3 } else { u3b };
    let u = pick.powf(1.0 / 3.0);
    let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = Vec::with_capacity(3);
    for k in 0..3 {
        let uk = u * omega.powu(k);
        let t = if uk.norm() > 1e-12 {
            uk - p / (3.0 * uk)
        } else {
            uk
        };
        roots.push(t - a / 3.0);
    }
    roots
}

fn restrict(q: &QForm6, basis: &[Vec6; 3]) -> M3 {
    let mut m = [[c(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = c(0.0, 0.0);
            for a in 0..6 {
                for b in 0..6 {
                    s += basis[i][a] * q.0[a][b] * basis[j][b];
                }
            }
            m[i][j] = s;
        }
    }
    m
}

/// Splits a rank-≤2 symmetric 3×3 form into two lines `l₁, l₂` with
/// `M ∝ l₁l₂ᵀ + l₂l₁ᵀ`.
fn split_degenerate_conic(m: &M3) -> Option<([C; 3], [C; 3])> {
    let adj = adjugate3(m);
    let adj_norm: f64 = adj.iter().flatten().map(|e| e.norm()).sum();
    let m_norm: f64 = m.iter().flatten().map(|e| e.norm()).sum();
    let mut work = *m;
    if adj_norm > 1e-10 * m_norm * m_norm {
        // rank 2: shift by the cross matrix of the intersection point
        let mut i_best = 0;
        for i in 1..3 {
            if adj[i][i].norm() > adj[i_best][i_best].norm() {
                i_best = i;
            }
        }
        let beta = (-adj[i_best][i_best]).sqrt();
        if beta.norm() < 1e-14 {
            return None;
        }
        let p = [
            adj[0][i_best] / beta,
            adj[1][i_best] / beta,
            adj[2][i_best] / beta,
        ];
        let cm = cross_matrix(&p);
        for i in 0..3 {
            for j in 0..3 {
                work[i][j] += cm[i][j];
            }
        }
    }
    // rank-1 extraction: pick the largest entry
    let (mut bi, mut bj, mut bn) = (0, 0, -1.0);
    for i in 0..3 {
        for j in 0..3 {
            if work[i][j].norm() > bn {
                bn = work[i][j].norm();
                bi = i;
                bj = j;
            }
        }
    }
    if bn < 1e-12 * m_norm.max(1.0) {
        return None;
    }
    let l1 = [work[bi][0], work[bi][1], work[bi][2]];
    let l2 = [work[0][bj], work[1][bj], work[2][bj]];
    Some((l1, l2))
}

fn line_basis(l: &[C; 3]) -> [[C; 3]; 2] {
    // two independent solutions of l·x = 0
    let mut k = 0;
    for i in 1..3 {
        if l[i].norm() > l[k].norm() {
            k = i;
        }
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut out = [[c(0.0, 0.0); 3]; 2];
    for (row, &m) in others.iter().enumerate() {
        out[row][m] = c(1.0, 0.0);
        out[row][k] = -l[m] / l[k];
    }
    out
}

/// Points of `{h₀ = h∞ = 0}` obtained from random plane sections.
pub fn sample_variety(model: &PoonModel, count: usize, seed: u64) -> Result<Vec<Vec6>> {
    let mut rng = rng_for(seed, "variety-sampler");
    let mut out: Vec<Vec6> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 200 * count {
            return Err(Error::Numerical(format!(
                "variety sampler stalled at {} of {count} points",
                out.len()
            )));
        }
        let basis: [Vec6; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        });
        let a = restrict(&model.h0, &basis);
        let b = restrict(&model.hinf, &basis);
        // det(A - μB) by interpolation at 4 nodes
        let dets: Vec<C> = [0.0, 1.0, -1.0, 2.0]
            .iter()
            .map(|&mu| {
                let mut m = a;
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] -= b[i][j] * mu;
                    }
                }
                det3(&m)
            })
            .collect();
        // cubic c3 μ³ + c2 μ² + c1 μ + c0 through the 4 values
        let c0 = dets[0];
        // solve the small Vandermonde for the rest
        let d1 = dets[1] - c0;
        let d2 = dets[3] - c0;
        let dm = dets[2] - c0;
        // d1 = c3 + c2 + c1; dm = -c3 + c2 - c1; d2 = 8c3 + 4c2 + 2c1
        let c2 = (d1 + dm) / 2.0;
        let c3 = (d2 - 2.0 * d1 - 2.0 * c2) / 6.0;
        let c1 = d1 - c3 - c2;
        for mu in cubic_roots(c3, c2, c1, c0) {
            let mut m = a;
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] -= b[i][j] * mu;
                }
            }
            let Some((l1, l2)) = split_degenerate_conic(&m) else {
                continue;
            };
            for l in [l1, l2] {
                let lb = line_basis(&l);
                // intersect with the B-conic: quadratic in (s, t)
                let q = |x: &[C; 3], y: &[C; 3]| -> C {
                    let mut s = c(0.0, 0.0);
                    for i in 0..3 {
                        for j in 0..3 {
                            s += x[i] * b[i][j] * y[j];
                        }
                    }
                    s
                };
                let (q11, q12, q22) = (q(&lb[0], &lb[0]), q(&lb[0], &lb[1]), q(&lb[1], &lb[1]));
                let sols: Vec<(C, C)> = if q11.norm() < 1e-14 {
                    vec![(c(1.0, 0.0), c(0.0, 0.0))]
                } else {
                    let disc = (q12 * q12 - q11 * q22).sqrt();
                    vec![
                        ((-q12 + disc) / q11, c(1.0, 0.0)),
                        ((-q12 - disc) / q11, c(1.0, 0.0)),
                    ]
                };
                for (s, t) in sols {
                    let mut x3 = [c(0.0, 0.0); 3];
                    for i in 0..3 {
                        x3[i] = s * lb[0][i] + t * lb[1][i];
                    }
                    let mut v = [c(0.0, 0.0); 6];
                    for i in 0..6 {
                        for (k, bk) in basis.iter().enumerate() {
                            v[i] += x3[k] * bk[i];
                        }
                    }
                    let scale = v.iter().map(|e| e.norm()).fold(0.0, f64::max);
                    if scale < 1e-10 {
                        continue;
                    }
                    for e in v.iter_mut() {
                        *e /= scale;
                    }
                    let r0 = model.h0.eval(&v).norm();
                    let ri = model.hinf.eval(&v).norm();
                    if r0 < 1e-9 && ri < 1e-9 {
                        out.push(v);
                        if out.len() == count {
                            return Ok(out);
                        }
                    }
                }
            }
            break; // one pencil root per plane is enough
        }
    }
    Ok(out)
}
