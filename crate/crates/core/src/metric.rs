//! The metric tensor on the free locus and a generic curvature engine.
//!
//! In a chart with constant `k` the metric in cylindrical coordinates
//! `(r, θ₃, z, θ₁)` is
//!
//! ```text
//! g = V (dr² + dz²) + V r² dθ₃² + (z²/V) (f̃ dθ₃ - dθ₁)²,   f̃ = k + f,
//! ```
//!
//! which glues across charts under the fiber transition
//! `θ₁ ↦ θ₁ + (k' - k) θ₃`. Near the axis the Cartesian frame
//! `(x, y, z, θ₁)` is used instead, with `f̃ dθ₃ = (f̃/r²)(x dy - y dx)`
//! extending smoothly.
//!
//! The curvature engine takes any metric field written generically over
//! [`Scalar`] and produces scalar curvature, the Riemann tensor and the two
//! Weyl halves. Second derivatives come from [`HyperDual4`] jets; a
//! finite-difference pipeline provides the independent cross-check.

use crate::dual::{HyperDual4, Scalar};
use crate::linalg::{cholesky4, mat4_inv, sym_eigenvalues, Mat4};
use crate::monopole::{f_total, v_total, ChartPoint, MonopoleConfig};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `(r, θ₃, z, θ₁)`; degenerate on the axis.
    Cylindrical,
    /// `(x, y, z, θ₁)`; valid near the axis.
    Cartesian,
}

#[derive(Clone, Debug)]
pub struct MetricAtPoint {
    pub frame: Frame,
    pub point: ChartPoint,
    pub g: Mat4,
}

/// A metric tensor field given by chart components, written generically so
/// the same formula can be evaluated on jets.
pub trait MetricField {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4];
}

/// Lebrun metric in cylindrical coordinates for a fixed chart constant.
#[derive(Clone, Debug)]
pub struct LebrunCylindrical {
    pub heights: Vec<f64>,
    pub k: f64,
}

impl MetricField for LebrunCylindrical {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let (r, z) = (x[0], x[2]);
        let v = v_total(&self.heights, r, z);
        let ft = f_total(&self.heights, r, z) + S::from_f64(self.k);
        let zero = S::from_f64(0.0);
        let z2_over_v = z * z / v;
        let mut g = [[zero; 4]; 4];
        g[0][0] = v;
        g[2][2] = v;
        g[1][1] = v * r * r + z2_over_v * ft * ft;
        g[1][3] = -(z2_over_v * ft);
        g[3][1] = g[1][3];
        g[3][3] = z2_over_v;
        g
    }
}

/// Lebrun metric in the Cartesian frame `(x, y, z, θ₁)` of one chart.
#[derive(Clone, Debug)]
pub struct LebrunCartesian {
    pub heights: Vec<f64>,
    pub k: f64,
}

impl MetricField for LebrunCartesian {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let (xx, yy, z) = (x[0], x[1], x[2]);
        let r2 = xx * xx + yy * yy;
        let r = r2.sqrt();
        let v = v_total(&self.heights, r, z);
        let ft = f_total(&self.heights, r, z) + S::from_f64(self.k);
        // f̃ dθ₃ - dθ₁ = h (x dy - y dx) - dθ₁ with h = f̃ / r²
        let h = ft / r2;
        let eta = [-(h * yy), h * xx, S::from_f64(0.0), S::from_f64(-1.0)];
        let w = z * z / v;
        let zero = S::from_f64(0.0);
        let mut g = [[zero; 4]; 4];
        for i in 0..3 {
            g[i][i] = v;
        }
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] += w * eta[i] * eta[j];
            }
        }
        g
    }
}

/// Any metric field rescaled by `e^{2u}` with `u = log z` (slot 2).
pub struct ZSquaredScaled<F>(pub F);

impl<F: MetricField> MetricField for ZSquaredScaled<F> {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let mut g = self.0.components(x);
        let s = x[2] * x[2];
        for row in g.iter_mut() {
            for e in row.iter_mut() {
                *e = *e * s;
            }
        }
        g
    }
}

fn field_for(
    config: &MonopoleConfig,
    chart: crate::monopole::ChartId,
) -> Result<LebrunCylindrical> {
    Ok(LebrunCylindrical {
        heights: config.heights()?.to_vec(),
        k: config.chart_constant(chart)?,
    })
}

/// Metric components at a chart point, in the requested frame.
pub fn metric_at(config: &MonopoleConfig, p: &ChartPoint, frame: Frame) -> Result<MetricAtPoint> {
    if config.min_distance_to_monopole(&p.base()) < 1e-9 {
        return Err(Error::Singularity);
    }
    let k = config.chart_constant(p.chart)?;
    let heights = config.heights()?.to_vec();
    let g = match frame {
        Frame::Cylindrical => {
            if p.r <= 0.0 {
                return Err(Error::AxisDegenerate);
            }
            LebrunCylindrical { heights, k }.components(&p.coords())
        }
        Frame::Cartesian => {
            let b = p.base();
            LebrunCartesian { heights, k }.components(&[b.x, b.y, b.z, p.theta1])
        }
    };
    let ev = sym_eigenvalues(&g);
    if ev[0] <= 0.0 {
        return Err(Error::Numerical(format!(
            "metric not positive definite (min eigenvalue {:.3e})",
            ev[0]
        )));
    }
    Ok(MetricAtPoint {
        frame,
        point: *p,
        g,
    })
}

// ---------------------------------------------------------------------------
// Joyce-style coordinates on the quadrant
// ---------------------------------------------------------------------------

/// `(x₁, x₂) = (r² - z², 2rz)`, a conformal chart of the first quadrant.
pub fn joyce_coordinates(r: f64, z: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && z > 0.0) {
        return Err(Error::Domain(format!(
            "need the open first quadrant, got (r, z) = ({r}, {z})"
        )));
    }
    Ok((r * r - z * z, 2.0 * r * z))
}

/// Conformal factor: `dx₁² + dx₂² = 4(r² + z²)(dr² + dz²)`.
pub fn joyce_conformal_factor(r: f64, z: f64) -> Result<f64> {
    if !(r > 0.0 && z > 0.0) {
        return Err(Error::Domain("need the open first quadrant".into()));
    }
    Ok(4.0 * (r * r + z * z))
}

/// Inverse map, `r² = (x₁ + √(x₁²+x₂²))/2`, `z² = (-x₁ + √(x₁²+x₂²))/2`.
pub fn joyce_inverse(x1: f64, x2: f64) -> Result<(f64, f64)> {
    if !(x2 > 0.0) {
        return Err(Error::Domain("need x₂ > 0".into()));
    }
    let m = (x1 * x1 + x2 * x2).sqrt();
    Ok((((x1 + m) / 2.0).sqrt(), ((m - x1) / 2.0).sqrt()))
}

// ---------------------------------------------------------------------------
// curvature engine
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct CurvatureReport {
    pub scalar: f64,
    pub weyl_sd_norm: f64,
    pub weyl_asd_norm: f64,
    pub weyl_cross_norm: f64,
    pub riemann_norm: f64,
    pub bianchi_residual: f64,
}

impl CurvatureReport {
    /// `min(|W⁺|, |W⁻|) / max(|W⁺|, |W⁻|)`, the orientation-free
    /// half-vanishing ratio.
    pub fn weyl_ratio(&self) -> f64 {
        let (a, b) = (self.weyl_sd_norm, self.weyl_asd_norm);
        if a.max(b) == 0.0 {
            0.0
        } else {
            a.min(b) / a.max(b)
        }
    }

    /// Which half is (numerically) the vanishing one. `true` = the half
    /// labelled self-dual by the engine's frame orientation.
    pub fn sd_half_vanishes(&self) -> bool {
        self.weyl_sd_norm <= self.weyl_asd_norm
    }
}

struct MetricJets {
    g: Mat4,
    dg: [Mat4; 4],
    ddg: [[Mat4; 4]; 4],
}

fn jets_hyperdual<F: MetricField>(field: &F, x: [f64; 4]) -> MetricJets {
    let vars: [HyperDual4; 4] = std::array::from_fn(|i| HyperDual4::var(x[i], i));
    let comps = field.components(&vars);
    let mut g = [[0.0; 4]; 4];
    let mut dg = [[[0.0; 4]; 4]; 4];
    let mut ddg = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = comps[i][j].v;
            for l in 0..4 {
                dg[l][i][j] = comps[i][j].d[l];
                for k in 0..4 {
                    ddg[k][l][i][j] = comps[i][j].h[k][l];
                }
            }
        }
    }
    MetricJets { g, dg, ddg }
}

fn jets_fd<F: MetricField>(field: &F, x: [f64; 4], h: f64) -> MetricJets {
    let at = |p: [f64; 4]| field.components(&p);
    let g = at(x);
    let mut dg = [[[0.0; 4]; 4]; 4];
    let mut ddg = [[[[0.0; 4]; 4]; 4]; 4];
    let shift = |mut p: [f64; 4], l: usize, s: f64| {
        p[l] += s;
        p
    };
    for l in 0..4 {
        let p2 = at(shift(x, l, 2.0 * h));
        let p1 = at(shift(x, l, h));
        let m1 = at(shift(x, l, -h));
        let m2 = at(shift(x, l, -2.0 * h));
        for i in 0..4 {
            for j in 0..4 {
                dg[l][i][j] = (-p2[i][j] + 8.0 * p1[i][j] - 8.0 * m1[i][j] + m2[i][j]) / (12.0 * h);
                ddg[l][l][i][j] = (-p2[i][j] + 16.0 * p1[i][j] - 30.0 * g[i][j] + 16.0 * m1[i][j]
                    - m2[i][j])
                    / (12.0 * h * h);
            }
        }
    }
    for k in 0..4 {
        for l in 0..4 {
            if k == l {
                continue;
            }
            let pp = at(shift(shift(x, k, h), l, h));
            let pm = at(shift(shift(x, k, h), l, -h));
            let mp = at(shift(shift(x, k, -h), l, h));
            let mm = at(shift(shift(x, k, -h), l, -h));
            for i in 0..4 {
                for j in 0..4 {
                    ddg[k][l][i][j] = (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / (4.0 * h * h);
                }
            }
        }
    }
    MetricJets { g, dg, ddg }
}

fn curvature_from_jets(jets: &MetricJets) -> Result<CurvatureReport> {
    let MetricJets { g, dg, ddg } = jets;
    let ginv = mat4_inv(g)?;

    // Christoffel symbols of the first and second kind
    let mut gamma1 = [[[0.0; 4]; 4]; 4]; // gamma1[c][a][b] = Γ_{c,ab}
    for c in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                gamma1[c][a][b] = 0.5 * (dg[b][c][a] + dg[a][c][b] - dg[c][a][b]);
            }
        }
    }
    let mut gamma2 = [[[0.0; 4]; 4]; 4]; // gamma2[c][a][b] = Γ^c_{ab}
    for c in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for d in 0..4 {
                    s += ginv[c][d] * gamma1[d][a][b];
                }
                gamma2[c][a][b] = s;
            }
        }
    }

    // R_{iklm} = ½(∂_k∂_l g_im + ∂_i∂_m g_kl - ∂_k∂_m g_il - ∂_i∂_l g_km)
    //           + Σ_n (Γ^n_{kl} Γ_{n,im} - Γ^n_{km} Γ_{n,il})
    let mut riem = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    let mut t = 0.5
                        * (ddg[k][l][i][m] + ddg[i][m][k][l] - ddg[k][m][i][l] - ddg[i][l][k][m]);
                    for n in 0..4 {
                        t += gamma2[n][k][l] * gamma1[n][i][m] - gamma2[n][k][m] * gamma1[n][i][l];
                    }
                    riem[i][k][l][m] = t;
                }
            }
        }
    }

    // Ricci and scalar
    let mut ricci = [[0.0; 4]; 4];
    for k in 0..4 {
        for m in 0..4 {
            let mut s = 0.0;
            for i in 0..4 {
                for l in 0..4 {
                    s += ginv[i][l] * riem[i][k][l][m];
                }
            }
            ricci[k][m] = s;
        }
    }
    let mut scalar = 0.0;
    for k in 0..4 {
        for m in 0..4 {
            scalar += ginv[k][m] * ricci[k][m];
        }
    }

    // first Bianchi residual, relative to the largest Riemann component
    let mut rmax: f64 = 0.0;
    let mut bianchi: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    rmax = rmax.max(riem[a][b][c][d].abs());
                    bianchi =
                        bianchi.max((riem[a][b][c][d] + riem[a][c][d][b] + riem[a][d][b][c]).abs());
                }
            }
        }
    }
    if rmax > 0.0 {
        bianchi /= rmax;
    }

    // Weyl tensor (n = 4)
    let mut weyl = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    weyl[a][b][c][d] = riem[a][b][c][d]
                        - 0.5
                            * (g[a][c] * ricci[b][d] - g[a][d] * ricci[b][c]
                                + g[b][d] * ricci[a][c]
                                - g[b][c] * ricci[a][d])
                        + scalar / 6.0 * (g[a][c] * g[b][d] - g[a][d] * g[b][c]);
                }
            }
        }
    }

    // orthonormal frame from the Cholesky factor: E = (Lᵀ)⁻¹
    let l = cholesky4(g)?;
    let mut lt = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            lt[i][j] = l[j][i];
        }
    }
    let e = mat4_inv(&lt)?; // columns are frame vectors: e[mu][a]

    let frame4 = |t: &[[[[f64; 4]; 4]; 4]; 4]| -> [[[[f64; 4]; 4]; 4]; 4] {
        // contract one slot at a time
        let mut t1 = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for n2 in 0..4 {
                for n3 in 0..4 {
                    for n4 in 0..4 {
                        let mut s = 0.0;
                        for mu in 0..4 {
                            s += t[mu][n2][n3][n4] * e[mu][a];
                        }
                        t1[a][n2][n3][n4] = s;
                    }
                }
            }
        }
        let mut t2 = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for n3 in 0..4 {
                    for n4 in 0..4 {
                        let mut s = 0.0;
                        for mu in 0..4 {
                            s += t1[a][mu][n3][n4] * e[mu][b];
                        }
                        t2[a][b][n3][n4] = s;
                    }
                }
            }
        }
        let mut t3 = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for n4 in 0..4 {
                        let mut s = 0.0;
                        for mu in 0..4 {
                            s += t2[a][b][mu][n4] * e[mu][c];
                        }
                        t3[a][b][c][n4] = s;
                    }
                }
            }
        }
        let mut t4 = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let mut s = 0.0;
                        for mu in 0..4 {
                            s += t3[a][b][c][mu] * e[mu][d];
                        }
                        t4[a][b][c][d] = s;
                    }
                }
            }
        }
        t4
    };

    let weyl_on = frame4(&weyl);
    let riem_on = frame4(&riem);

    // Λ² basis: (01), (02), (03), (23), (31), (12); duals pair k ↔ k+3
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];
    let mut w6 = [[0.0; 6]; 6];
    for p in 0..6 {
        for q in 0..6 {
            let (a, b) = PAIRS[p];
            let (c, d) = PAIRS[q];
            w6[p][q] = weyl_on[a][b][c][d];
        }
    }
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            let pp = 0.5 * (w6[k][l] + w6[k][l + 3] + w6[k + 3][l] + w6[k + 3][l + 3]);
            let mm = 0.5 * (w6[k][l] - w6[k][l + 3] - w6[k + 3][l] + w6[k + 3][l + 3]);
            let pm = 0.5 * (w6[k][l] - w6[k][l + 3] + w6[k + 3][l] - w6[k + 3][l + 3]);
            plus += pp * pp;
            minus += mm * mm;
            cross += pm * pm;
        }
    }

    let mut riemann_norm = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    riemann_norm += riem_on[a][b][c][d] * riem_on[a][b][c][d];
                }
            }
        }
    }

    Ok(CurvatureReport {
        scalar,
        weyl_sd_norm: plus.sqrt(),
        weyl_asd_norm: minus.sqrt(),
        weyl_cross_norm: cross.sqrt(),
        riemann_norm: riemann_norm.sqrt(),
        bianchi_residual: bianchi,
    })
}

/// Curvature of a metric field at a point, exact second derivatives.
pub fn curvature_at<F: MetricField>(field: &F, x: [f64; 4]) -> Result<CurvatureReport> {
    curvature_from_jets(&jets_hyperdual(field, x))
}

/// Same report from the finite-difference pipeline (independent oracle).
pub fn curvature_at_fd<F: MetricField>(field: &F, x: [f64; 4], h: f64) -> Result<CurvatureReport> {
    curvature_from_jets(&jets_fd(field, x, h))
}

/// Scalar curvature of the monopole metric at a chart point.
pub fn scalar_curvature(config: &MonopoleConfig, p: &ChartPoint) -> Result<f64> {
    Ok(curvature_report(config, p)?.scalar)
}

/// Full curvature report of the monopole metric at a chart point
/// (cylindrical frame; requires `r > 0`).
pub fn curvature_report(config: &MonopoleConfig, p: &ChartPoint) -> Result<CurvatureReport> {
    if p.r <= 0.0 {
        return Err(Error::AxisDegenerate);
    }
    if config.min_distance_to_monopole(&p.base()) < 1e-6 {
        return Err(Error::Singularity);
    }
    let field = field_for(config, p.chart)?;
    curvature_at(&field, p.coords())
}

/// Curvature report computed in the Cartesian frame (usable near the axis).
pub fn curvature_report_cartesian(
    config: &MonopoleConfig,
    p: &ChartPoint,
) -> Result<CurvatureReport> {
    let field = LebrunCartesian {
        heights: config.heights()?.to_vec(),
        k: config.chart_constant(p.chart)?,
    };
    let b = p.base();
    curvature_at(&field, [b.x, b.y, b.z, p.theta1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monopole::ChartId;
    use approx::assert_relative_eq;

    struct Flat;
    impl MetricField for Flat {
        fn components<S: Scalar>(&self, _x: &[S; 4]) -> [[S; 4]; 4] {
            let zero = S::from_f64(0.0);
            let mut g = [[zero; 4]; 4];
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = S::from_f64(1.0);
            }
            g
        }
    }

    /// Round 4-sphere of radius 1 in stereographic coordinates.
    struct Sphere4;
    impl MetricField for Sphere4 {
        fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
            let one = S::from_f64(1.0);
            let n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
            let c = S::from_f64(4.0) / ((one + n2) * (one + n2));
            let zero = S::from_f64(0.0);
            let mut g = [[zero; 4]; 4];
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = c;
            }
            g
        }
    }

    /// Hyperbolic plane times flat plane; sectional curvature -1 block.
    struct H2xE2;
    impl MetricField for H2xE2 {
        fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
            let zero = S::from_f64(0.0);
            let w = (x[1] * x[1]).recip();
            let mut g = [[zero; 4]; 4];
            g[0][0] = w;
            g[1][1] = w;
            g[2][2] = S::from_f64(1.0);
            g[3][3] = S::from_f64(1.0);
            g
        }
    }

    #[test]
    fn engine_on_flat_space_is_exactly_zero() {
        let rep = curvature_at(&Flat, [0.3, -0.2, 0.9, 1.4]).unwrap();
        assert_eq!(rep.scalar, 0.0);
        assert_eq!(rep.riemann_norm, 0.0);
        assert_eq!(rep.weyl_sd_norm, 0.0);
        assert_eq!(rep.weyl_asd_norm, 0.0);
    }

    #[test]
    fn engine_on_round_sphere() {
        for x in [[0.0, 0.0, 0.0, 0.0], [0.3, -0.1, 0.2, 0.4]] {
            let rep = curvature_at(&Sphere4, x).unwrap();
            assert_relative_eq!(rep.scalar, 12.0, epsilon = 1e-9);
            // conformally flat: both Weyl halves vanish
            assert!(rep.weyl_sd_norm < 1e-10, "W+ = {}", rep.weyl_sd_norm);
            assert!(rep.weyl_asd_norm < 1e-10, "W- = {}", rep.weyl_asd_norm);
            assert!(rep.bianchi_residual < 1e-10);
        }
    }

    #[test]
    fn engine_sign_convention_h2() {
        // scalar curvature of H² × E² is -2
        let rep = curvature_at(&H2xE2, [0.4, 1.3, 0.0, 0.0]).unwrap();
        assert_relative_eq!(rep.scalar, -2.0, epsilon = 1e-10);
    }

    #[test]
    fn metric_components_match_formulas() {
        let cfg = MonopoleConfig::toric(&[1.0, 2.0]).unwrap();
        let p = ChartPoint::new(&cfg, ChartId(2), 1.0, 0.0, 1.5, 0.0).unwrap();
        let m = metric_at(&cfg, &p, Frame::Cylindrical).unwrap();
        let heights = cfg.heights().unwrap();
        let v = v_total(heights, 1.0, 1.5);
        let f = f_total(heights, 1.0, 1.5);
        assert_relative_eq!(m.g[0][0], v);
        assert_relative_eq!(m.g[2][2], v);
        assert_relative_eq!(m.g[3][3], 1.5 * 1.5 / v, epsilon = 1e-14);
        assert_relative_eq!(m.g[1][1], v + 1.5 * 1.5 * f * f / v, epsilon = 1e-14);
        assert_relative_eq!(m.g[1][3], -1.5 * 1.5 * f / v, epsilon = 1e-14);
        // determinant identity det g = V² r² z²
        let det = crate::linalg::mat4_det(&m.g);
        assert_relative_eq!(det, v * v * 1.0 * 1.5 * 1.5, max_relative = 1e-12);
    }

    #[test]
    fn metric_theta_independent_and_far_field_flat() {
        let cfg = MonopoleConfig::toric(&[1.0, 2.0]).unwrap();
        let a = ChartPoint::new(&cfg, ChartId(2), 0.8, 0.7, 1.2, 0.9).unwrap();
        let b = ChartPoint::new(&cfg, ChartId(2), 0.8, 0.0, 1.2, 0.0).unwrap();
        let ga = metric_at(&cfg, &a, Frame::Cylindrical).unwrap().g;
        let gb = metric_at(&cfg, &b, Frame::Cylindrical).unwrap().g;
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(ga[i][j], gb[i][j], epsilon = 1e-14);
            }
        }
        // far field in the top chart: V → 1 and the chart coefficient → 0,
        // so g → diag(1, r², 1, z²)
        let (r, z) = (4e3, 3e3);
        let far = ChartPoint::new(&cfg, ChartId(3), r, 0.0, z, 0.0).unwrap();
        let gf = metric_at(&cfg, &far, Frame::Cylindrical).unwrap().g;
        assert_relative_eq!(gf[0][0], 1.0, epsilon = 1e-4);
        assert_relative_eq!(gf[2][2], 1.0, epsilon = 1e-4);
        assert_relative_eq!(gf[1][1], r * r, max_relative = 1e-3);
        assert_relative_eq!(gf[3][3], z * z, max_relative = 1e-4);
        assert!(gf[1][3].abs() < 1e-3 * z * z);
        let det = crate::linalg::mat4_det(&gf);
        assert_relative_eq!(det, r * r * z * z, max_relative = 1e-3);
    }

    #[test]
    fn cartesian_and_cylindrical_agree_on_scalars() {
        let cfg = MonopoleConfig::toric(&[1.0, 2.0]).unwrap();
        let p = ChartPoint::new(&cfg, ChartId(2), 0.4, 0.9, 1.4, 0.3).unwrap();
        let cyl = curvature_report(&cfg, &p).unwrap();
        let cart = curvature_report_cartesian(&cfg, &p).unwrap();
        assert_relative_eq!(cyl.scalar, cart.scalar, epsilon = 1e-7);
        assert_relative_eq!(cyl.riemann_norm, cart.riemann_norm, max_relative = 1e-7);
        assert_relative_eq!(
            cyl.weyl_sd_norm.min(cyl.weyl_asd_norm),
            cart.weyl_sd_norm.min(cart.weyl_asd_norm),
            epsilon = 1e-8
        );
    }

    #[test]
    fn scalar_flatness_of_the_monopole_metric() {
        let cfg = MonopoleConfig::toric(&[1.0]).unwrap();
        let p = ChartPoint::new(&cfg, ChartId(1), 1.0, 0.0, 1.2, 0.0).unwrap();
        let s = scalar_curvature(&cfg, &p).unwrap();
        assert!(s.abs() < 1e-7, "scalar = {s:.3e}");
    }

    #[test]
    fn weyl_half_vanishes_and_is_conformally_stable() {
        let cfg = MonopoleConfig::toric(&[1.0, 2.0]).unwrap();
        let p = ChartPoint::new(&cfg, ChartId(2), 1.1, 0.0, 1.6, 0.0).unwrap();
        let rep = curvature_report(&cfg, &p).unwrap();
        assert!(rep.weyl_ratio() < 1e-5, "ratio {}", rep.weyl_ratio());
        // the Weyl operator must not mix the two halves
        assert!(
            rep.weyl_cross_norm < 1e-12 * rep.riemann_norm,
            "cross block {}",
            rep.weyl_cross_norm
        );
        // rescaling by z² changes neither the vanishing side nor the ratio
        let field = ZSquaredScaled(field_for(&cfg, p.chart).unwrap());
        let rep2 = curvature_at(&field, p.coords()).unwrap();
        assert!(rep2.weyl_ratio() < 1e-5);
        assert_eq!(rep.sd_half_vanishes(), rep2.sd_half_vanishes());
    }

    #[test]
    fn hyperdual_and_fd_pipelines_agree() {
        let cfg = MonopoleConfig::toric(&[1.0, 2.0]).unwrap();
        let field = field_for(&cfg, ChartId(2)).unwrap();
        let x = [0.9, 0.0, 1.4, 0.0];
        let a = curvature_at(&field, x).unwrap();
        let b = curvature_at_fd(&field, x, 1e-4 * 2.4).unwrap();
        assert_relative_eq!(a.scalar, b.scalar, epsilon = 1e-4);
        assert_relative_eq!(a.riemann_norm, b.riemann_norm, max_relative = 1e-5);
        assert_relative_eq!(
            a.weyl_sd_norm,
            b.weyl_sd_norm,
            max_relative = 1e-4,
            epsilon = 1e-6
        );
    }

    #[test]
    fn joyce_map_examples_and_roundtrip() {
        assert_eq!(joyce_coordinates(1.0, 1.0).unwrap(), (0.0, 2.0));
        assert_relative_eq!(joyce_conformal_factor(1.0, 1.0).unwrap(), 8.0);
        assert_eq!(joyce_coordinates(2.0, 1.0).unwrap(), (3.0, 4.0));
        assert_relative_eq!(joyce_conformal_factor(2.0, 1.0).unwrap(), 20.0);
        for &(r, z) in &[(0.3, 0.7), (2.0, 0.1), (1.4, 1.4)] {
            let (x1, x2) = joyce_coordinates(r, z).unwrap();
            let (rr, zz) = joyce_inverse(x1, x2).unwrap();
            assert_relative_eq!(rr, r, epsilon = 1e-12);
            assert_relative_eq!(zz, z, epsilon = 1e-12);
        }
        assert!(joyce_coordinates(0.0, 1.0).is_err());
    }
}
