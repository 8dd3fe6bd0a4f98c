//! The monopole potential, the explicit global connection for collinear
//! configurations, the chart atlas and its transition functions.
//!
//! For points on the z-axis at heights `c₁ < … < c_n` the free locus is
//! covered by charts `U_j = U ∪ I_j`, where `U` is the complement of the
//! axis and `I_j = (c_{j-1}, c_j)` the j-th open axis interval (with
//! `c₀ = 0`, `c_{n+1} = ∞`). Over `U_j` the connection form reads
//! `i (k_j + f) dθ₃ ∓ i dθ₁` with `f = Σ_j f_{c_j}` and the chart constant
//! `k_j` chosen so the coefficient vanishes on `I_j`.

use crate::dual::{Dual4, Scalar};
use crate::hyperbolic::{distance, HyperbolicPoint};
use crate::{Error, Result};

/// Chart label, 1-based: `U_j`, `j ∈ {1, …, n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChartId(pub usize);

#[derive(Clone, Debug)]
pub struct MonopoleConfig {
    points: Vec<HyperbolicPoint>,
    /// Sorted heights, present exactly when every point lies on the z-axis.
    heights: Option<Vec<f64>>,
}

impl MonopoleConfig {
    pub fn from_points(points: Vec<HyperbolicPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BadConfig("need at least one monopole point".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if distance(&points[i], &points[j]) < 1e-12 {
                    return Err(Error::DuplicatePoints(i, j));
                }
            }
        }
        let toric = points.iter().all(|p| p.x == 0.0 && p.y == 0.0);
        let heights = if toric {
            let mut h: Vec<f64> = points.iter().map(|p| p.z).collect();
            h.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Some(h)
        } else {
            None
        };
        Ok(MonopoleConfig { points, heights })
    }

    /// A collinear configuration on the z-axis with the given heights.
    pub fn toric(heights: &[f64]) -> Result<Self> {
        let mut h = heights.to_vec();
        h.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if h.is_empty() {
            return Err(Error::BadConfig("need at least one height".into()));
        }
        if h[0] <= 0.0 {
            return Err(Error::BadConfig("heights must be positive".into()));
        }
        if h.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadConfig(
                "heights must be strictly increasing".into(),
            ));
        }
        let points = h
            .iter()
            .map(|&z| HyperbolicPoint::on_axis(z))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonopoleConfig {
            points,
            heights: Some(h),
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[HyperbolicPoint] {
        &self.points
    }

    pub fn is_toric(&self) -> bool {
        self.heights.is_some()
    }

    pub fn heights(&self) -> Result<&[f64]> {
        self.heights.as_deref().ok_or(Error::NotToric)
    }

    pub fn num_charts(&self) -> usize {
        self.n() + 1
    }

    pub fn charts(&self) -> impl Iterator<Item = ChartId> {
        (1..=self.num_charts()).map(ChartId)
    }

    /// The open axis interval `I_j` of a chart.
    pub fn chart_interval(&self, chart: ChartId) -> Result<(f64, f64)> {
        let h = self.heights()?;
        let j = chart.0;
        if j == 0 || j > h.len() + 1 {
            return Err(Error::OutsideChart { chart: j });
        }
        let lo = if j == 1 { 0.0 } else { h[j - 2] };
        let hi = if j == h.len() + 1 {
            f64::INFINITY
        } else {
            h[j - 1]
        };
        Ok((lo, hi))
    }

    /// Chart constant `k_j = -f(0, z ∈ I_j)`; for `n` monopoles this is
    /// `(2j - n - 2)/2` since each monopole contributes `±1/2` on the axis.
    pub fn chart_constant(&self, chart: ChartId) -> Result<f64> {
        let n = self.heights()?.len();
        let j = chart.0;
        if j == 0 || j > n + 1 {
            return Err(Error::OutsideChart { chart: j });
        }
        Ok((2.0 * j as f64 - n as f64 - 2.0) / 2.0)
    }

    /// The chart whose axis interval contains `z`.
    pub fn chart_of_axis_point(&self, z: f64) -> Result<ChartId> {
        let h = self.heights()?;
        if z <= 0.0 {
            return Err(Error::NotUpperHalfSpace(z));
        }
        if h.iter().any(|&c| z == c) {
            return Err(Error::Singularity);
        }
        let j = h.iter().filter(|&&c| c < z).count() + 1;
        Ok(ChartId(j))
    }

    /// A representative interior point of `I_j`, used for normalization.
    pub fn interval_midpoint(&self, chart: ChartId) -> Result<f64> {
        let (lo, hi) = self.chart_interval(chart)?;
        Ok(if hi.is_infinite() {
            2.0 * lo.max(0.5)
        } else {
            0.5 * (lo + hi)
        })
    }

    pub fn min_distance_to_monopole(&self, p: &HyperbolicPoint) -> f64 {
        self.points
            .iter()
            .map(|m| distance(m, p))
            .fold(f64::INFINITY, f64::min)
    }
}

// ---------------------------------------------------------------------------
// potentials
// ---------------------------------------------------------------------------

/// Monopole Green's function in cylindrical coordinates, pole at `(0, c)`.
///
/// Written with `E = (r² + (z-c)²)(r² + (z+c)²)` so the axis values are exact
/// and the singular locus is explicit.
pub fn green_generic<S: Scalar>(c: f64, r: S, z: S) -> S {
    let cc = S::from_f64(c);
    let r2 = r * r;
    let zm = z - cc;
    let zp = z + cc;
    let e = (r2 + zm * zm) * (r2 + zp * zp);
    let s = r2 + z * z + cc * cc;
    s / (e.sqrt() * S::from_f64(2.0)) - S::from_f64(0.5)
}

fn check_off_monopole(c: f64, r: f64, z: f64) -> Result<()> {
    let d2 = r * r + (z - c) * (z - c);
    if d2 <= 1e-28 * c * c {
        return Err(Error::Singularity);
    }
    Ok(())
}

pub fn green(c: f64, r: f64, z: f64) -> Result<f64> {
    if c <= 0.0 || z <= 0.0 || r < 0.0 {
        return Err(Error::Domain(format!(
            "green needs c, z > 0, r >= 0 (c={c}, r={r}, z={z})"
        )));
    }
    check_off_monopole(c, r, z)?;
    Ok(green_generic(c, r, z))
}

/// The connection potential `f_c(r, z) = (c² - r² - z²) / (2 √E)`.
pub fn fc_generic<S: Scalar>(c: f64, r: S, z: S) -> S {
    let cc = S::from_f64(c);
    let r2 = r * r;
    let zm = z - cc;
    let zp = z + cc;
    let e = (r2 + zm * zm) * (r2 + zp * zp);
    (cc * cc - r2 - z * z) / (e.sqrt() * S::from_f64(2.0))
}

pub fn connection_fc(c: f64, r: f64, z: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::Domain("fc needs c > 0".into()));
    }
    check_off_monopole(c, r, z)?;
    Ok(fc_generic(c, r, z))
}

/// `f = Σ_j f_{c_j}` for a toric configuration.
pub fn f_total<S: Scalar>(heights: &[f64], r: S, z: S) -> S {
    let mut acc = S::from_f64(0.0);
    for &c in heights {
        acc += fc_generic(c, r, z);
    }
    acc
}

/// `V = 1 + Σ_j Γ_{c_j}` in cylindrical coordinates (toric configurations).
pub fn v_total<S: Scalar>(heights: &[f64], r: S, z: S) -> S {
    let mut acc = S::from_f64(1.0);
    for &c in heights {
        acc += green_generic(c, r, z);
    }
    acc
}

/// The potential `V` at a point, for an arbitrary configuration.
///
/// The Green's function is a function of hyperbolic distance alone, so a
/// general term is evaluated by moving the pole to `(0,0,1)` and the
/// argument to `(0, 0, e^d)`.
pub fn potential(config: &MonopoleConfig, p: &HyperbolicPoint) -> Result<f64> {
    let mut v = 1.0;
    for m in config.points() {
        let d = distance(m, p);
        if d < 1e-12 {
            return Err(Error::Singularity);
        }
        v += green(1.0, 0.0, d.exp())?;
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// charts, connection coefficient, transitions
// ---------------------------------------------------------------------------

/// Coefficient of `dθ₃` in the chart connection form: `k_j + f(r, z)`.
pub fn chart_connection(config: &MonopoleConfig, chart: ChartId, r: f64, z: f64) -> Result<f64> {
    let heights = config.heights()?;
    let (lo, hi) = config.chart_interval(chart)?;
    if z <= 0.0 || r < 0.0 {
        return Err(Error::Domain(format!("need z > 0, r >= 0 (r={r}, z={z})")));
    }
    if r == 0.0 && !(z > lo && z < hi) {
        return Err(Error::OutsideChart { chart: chart.0 });
    }
    for &c in heights {
        check_off_monopole(c, r, z)?;
    }
    Ok(config.chart_constant(chart)? + f_total(heights, r, z))
}

/// U(1) transition from chart `from` to chart `to`, returned as the angle of
/// `g_{to,from} = e^{i (k_to - k_from) θ₃}`.
pub fn transition(config: &MonopoleConfig, from: ChartId, to: ChartId, theta3: f64) -> Result<f64> {
    Ok((config.chart_constant(to)? - config.chart_constant(from)?) * theta3)
}

pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut r = a % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// A point of the free locus in chart coordinates `(r, θ₃, z, θ₁)`.
#[derive(Clone, Copy, Debug)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub r: f64,
    pub theta3: f64,
    pub z: f64,
    pub theta1: f64,
}

impl ChartPoint {
    pub fn new(
        config: &MonopoleConfig,
        chart: ChartId,
        r: f64,
        theta3: f64,
        z: f64,
        theta1: f64,
    ) -> Result<Self> {
        if z <= 0.0 || r < 0.0 {
            return Err(Error::Domain(format!("need z > 0, r >= 0 (r={r}, z={z})")));
        }
        let (lo, hi) = config.chart_interval(chart)?;
        if r == 0.0 && !(z > lo && z < hi) {
            return Err(Error::OutsideChart { chart: chart.0 });
        }
        Ok(ChartPoint {
            chart,
            r,
            theta3,
            z,
            theta1,
        })
    }

    pub fn base(&self) -> HyperbolicPoint {
        HyperbolicPoint {
            x: self.r * self.theta3.cos(),
            y: self.r * self.theta3.sin(),
            z: self.z,
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.r, self.theta3, self.z, self.theta1]
    }
}

/// Re-expresses a point in another chart. The fiber angle changes by the
/// transition: `θ₁^(to) = θ₁^(from) + (k_to - k_from) θ₃`.
pub fn convert_chart(config: &MonopoleConfig, p: &ChartPoint, to: ChartId) -> Result<ChartPoint> {
    if p.chart == to {
        return Ok(*p);
    }
    if p.r == 0.0 {
        return Err(Error::AxisDegenerate);
    }
    let shift = transition(config, p.chart, to, p.theta3)?;
    ChartPoint::new(config, to, p.r, p.theta3, p.z, p.theta1 + shift)
}

// ---------------------------------------------------------------------------
// *dV and the connection identity
// ---------------------------------------------------------------------------

/// The two components of `*dV` in the `(dr∧dθ₃, dz∧dθ₃)` basis, off the axis.
///
/// The orientation of the cylindrical coframe is fixed once and for all by
/// requiring `d(f dθ₃) = *dV` to hold with the stated `f`; concretely
/// `*dV = -(r/z) V_z dr∧dθ₃ + (r/z) V_r dz∧dθ₃`.
pub fn star_dv(config: &MonopoleConfig, r: f64, z: f64) -> Result<(f64, f64)> {
    let heights = config.heights()?;
    if r <= 0.0 {
        return Err(Error::AxisDegenerate);
    }
    for &c in heights {
        check_off_monopole(c, r, z)?;
    }
    let v = v_total(heights, Dual4::var(r, 0), Dual4::var(z, 2));
    let (v_r, v_z) = (v.d[0], v.d[2]);
    Ok((-(r / z) * v_z, (r / z) * v_r))
}

/// Gradient of `f` via dual numbers: `(f_r, f_z)`.
pub fn f_gradient(heights: &[f64], r: f64, z: f64) -> (f64, f64) {
    let f = f_total(heights, Dual4::var(r, 0), Dual4::var(z, 2));
    (f.d[0], f.d[2])
}

/// Fourth-order central difference of a scalar function of two variables.
pub fn fd_gradient2(fun: &dyn Fn(f64, f64) -> f64, r: f64, z: f64, h: f64) -> (f64, f64) {
    let d = |g: &dyn Fn(f64) -> f64, x: f64| {
        (-g(x + 2.0 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2.0 * h)) / (12.0 * h)
    };
    (d(&|x| fun(x, z), r), d(&|x| fun(r, x), z))
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityResidual {
    /// Max residual of `d(f dθ₃) - *dV` with dual-number derivatives.
    pub max_dual: f64,
    /// Max residual with the finite-difference oracle.
    pub max_fd: f64,
    /// Sample at which the dual-number residual peaked.
    pub worst: (f64, f64),
}

/// Verifies `d(f dθ₃) = *dV` over the given `(r, z)` samples.
pub fn curvature_identity_residual(
    config: &MonopoleConfig,
    samples: &[(f64, f64)],
    fd_step_scale: f64,
) -> Result<IdentityResidual> {
    let heights = config.heights()?.to_vec();
    let mut max_dual: f64 = 0.0;
    let mut max_fd: f64 = 0.0;
    let mut worst = (f64::NAN, f64::NAN);
    for &(r, z) in samples {
        let (a, b) = star_dv(config, r, z)?;
        let (f_r, f_z) = f_gradient(&heights, r, z);
        let res = (f_r - a).abs().max((f_z - b).abs());
        if res > max_dual {
            max_dual = res;
            worst = (r, z);
        }
        let h = fd_step_scale * (1.0 + r.abs().max(z.abs()));
        let hs = heights.clone();
        let (fr_fd, fz_fd) = fd_gradient2(&move |rr, zz| f_total(&hs, rr, zz), r, z, h);
        let hs2 = heights.clone();
        let (vr_fd, vz_fd) = fd_gradient2(&move |rr, zz| v_total(&hs2, rr, zz), r, z, h);
        let a_fd = -(r / z) * vz_fd;
        let b_fd = (r / z) * vr_fd;
        let res_fd = (fr_fd - a_fd).abs().max((fz_fd - b_fd).abs());
        max_fd = max_fd.max(res_fd);
    }
    Ok(IdentityResidual {
        max_dual,
        max_fd,
        worst,
    })
}
