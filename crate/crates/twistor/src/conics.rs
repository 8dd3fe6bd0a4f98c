//! The four torus-invariant conics (images of the torus-invariant twistor
//! lines) and the permutation action of candidate automorphisms on them.

use num_complex::Complex64;

use crate::model::{c, mat_transpose, mat_vec, rank_complex, Mat6, PoonModel, QForm6, Vec6};
use crate::{Error, Result};

/// A conic given by three linear generators and one quadratic generator.
#[derive(Clone, Debug)]
pub struct Conic {
    pub lins: [Vec6; 3],
    pub quad: QForm6,
}

fn covector(entries: [(usize, Complex64); 2]) -> Vec6 {
    let mut v = [c(0.0, 0.0); 6];
    for (i, e) in entries {
        v[i] = e;
    }
    v
}

fn unit_covector(i: usize) -> Vec6 {
    let mut v = [c(0.0, 0.0); 6];
    v[i] = c(1.0, 0.0);
    v
}

fn quad_a(model: &PoonModel) -> QForm6 {
    // w₀w₁ + (2λ-3) z₂²
    let mut m = [[c(0.0, 0.0); 6]; 6];
    m[0][1] = c(0.5, 0.0);
    m[1][0] = c(0.5, 0.0);
    m[2][2] = c(2.0 * model.lambda - 3.0, 0.0);
    QForm6(m)
}

fn quad_b(model: &PoonModel) -> QForm6 {
    // (3-2λ) z₂² + w₄w₅
    let mut m = [[c(0.0, 0.0); 6]; 6];
    m[2][2] = c(3.0 - 2.0 * model.lambda, 0.0);
    m[4][5] = c(0.5, 0.0);
    m[5][4] = c(0.5, 0.0);
    QForm6(m)
}

/// The conics in the order `tl₁, tl₂, tl₃, tl₄`:
/// `{αz₂ ∓ iz₃ = w₄ = w₅ = Q_a = 0}` and `{βz₂ ∓ iz₃ = w₀ = w₁ = Q_b = 0}`.
pub fn invariant_conics(model: &PoonModel) -> [Conic; 4] {
    let a = model.alpha;
    let b = model.beta;
    let lam = |coef: f64, sign: f64| covector([(2, c(coef, 0.0)), (3, c(0.0, -sign))]);
    [
        Conic {
            lins: [lam(a, 1.0), unit_covector(4), unit_covector(5)],
            quad: quad_a(model),
        },
        Conic {
            lins: [lam(a, -1.0), unit_covector(4), unit_covector(5)],
            quad: quad_a(model),
        },
        Conic {
            lins: [lam(b, 1.0), unit_covector(0), unit_covector(1)],
            quad: quad_b(model),
        },
        Conic {
            lins: [lam(b, -1.0), unit_covector(0), unit_covector(1)],
            quad: quad_b(model),
        },
    ]
}

/// Sample points of the j-th conic (0-based), parametrized exactly.
pub fn conic_points(model: &PoonModel, j: usize, params: &[f64]) -> Vec<Vec6> {
    let (a, b, lam) = (model.alpha, model.beta, model.lambda);
    params
        .iter()
        .map(|&s| {
            let mut v = [c(0.0, 0.0); 6];
            match j {
                0 | 1 => {
                    let sign = if j == 0 { -1.0 } else { 1.0 };
                    // z₃ = ∓ i α z₂ so that αz₂ ∓ iz₃ = 0
                    v[0] = c(1.0, 0.0);
                    v[1] = c(-(2.0 * lam - 3.0) * s * s, 0.0);
                    v[2] = c(s, 0.0);
                    v[3] = c(0.0, sign * a * s);
                }
                2 | 3 => {
                    let sign = if j == 2 { -1.0 } else { 1.0 };
                    v[4] = c(1.0, 0.0);
                    v[5] = c(-(3.0 - 2.0 * lam) * s * s, 0.0);
                    v[2] = c(s, 0.0);
                    v[3] = c(0.0, sign * b * s);
                }
                _ => unreachable!(),
            }
            v
        })
        .collect()
}

/// The permutation induced on the four conics: `perm[j] = k` means
/// `U(tl_j) = tl_k`. Fails with a witness if the conic set is not preserved.
pub fn conic_permutation(u: &Mat6, model: &PoonModel, tol: f64) -> Result<[usize; 4]> {
    let conics = invariant_conics(model);
    let ut = mat_transpose(u);
    let mut perm = [usize::MAX; 4];
    for j in 0..4 {
        let mut found = None;
        for (k, ck) in conics.iter().enumerate() {
            // U(C_j) = C_k  ⟺  span{Uᵀ l : l ∈ lins_k} = span{lins_j}
            let pulled: Vec<Vec<Complex64>> =
                ck.lins.iter().map(|l| mat_vec(&ut, l).to_vec()).collect();
            let mut rows = pulled.clone();
            for l in &conics[j].lins {
                rows.push(l.to_vec());
            }
            if rank_complex(&rows, tol) == 3 {
                found = Some(k);
                break;
            }
        }
        let Some(k) = found else {
            return Err(Error::NotAnAutomorphism(format!(
                "image of conic {j} matches no catalogued conic"
            )));
        };
        perm[j] = k;
        // verify on sampled points: images of C_j satisfy C_k's generators
        for p in conic_points(model, j, &[0.3, 1.1, -0.7]) {
            let img = mat_vec(u, &p);
            let scale = img.iter().map(|e| e.norm()).fold(0.0, f64::max);
            for l in &conics[k].lins {
                let mut s = c(0.0, 0.0);
                for i in 0..6 {
                    s += l[i] * img[i];
                }
                if s.norm() > tol.sqrt() * scale {
                    return Err(Error::NotAnAutomorphism(format!(
                        "conic {j} image violates linear generator of conic {k}"
                    )));
                }
            }
        }
    }
    let mut seen = [false; 4];
    for &k in &perm {
        if seen[k] {
            return Err(Error::NotAnAutomorphism(
                "conic permutation not bijective".into(),
            ));
        }
        seen[k] = true;
    }
    Ok(perm)
}
