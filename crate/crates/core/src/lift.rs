//! Lifts of hyperbolic isometries to maps of the circle-bundle total space,
//! and everything built from them: rotation `S¹`-families, the involution
//! generators, the extra involution for two monopole points, conformality
//! certification, and composition tables of finite map sets.
//!
//! A lift of an axis-preserving isometry acts chartwise as
//! `θ₁ ↦ σ θ₁ + δ_j` with `σ = -1` exactly when the base reverses
//! orientation. The gauge shift `δ` is the line integral of the pulled-back
//! connection difference; for every isometry that preserves a collinear
//! monopole set this 1-form vanishes identically, which the constructor
//! verifies by quadrature along two independent paths rather than assuming.

use crate::cx;
use crate::dual::{Dual4, Scalar};
use crate::group::{self, GroupId};
use crate::hyperbolic::{
    self, distance, reflection_hemisphere, reflection_vertical_plane, rotation_about_z,
    HyperbolicIsometry, HyperbolicPoint,
};
use crate::linalg::mat4_inv;
use crate::metric::{metric_at, Frame};
use crate::monopole::{
    convert_chart, f_total, transition, wrap_angle, ChartId, ChartPoint, MonopoleConfig,
};
use crate::sample::rng_for;
use crate::{Error, Result};
use rand::Rng;

/// Default distance kept between conformality samples and the axis.
pub const R_MIN: f64 = 0.05;

const GL8_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

// ---------------------------------------------------------------------------
// bundle maps
// ---------------------------------------------------------------------------

/// Lift of an axis-preserving isometry, chartwise `θ₁ ↦ σθ₁ + δ_j`.
#[derive(Clone, Debug)]
pub struct AxialLift {
    pub iso: HyperbolicIsometry,
    /// Fiber sign: +1 rotation, -1 reflection.
    sigma: f64,
    /// Additive θ₃ offset of the base map.
    theta_offset: f64,
    /// Chart permutation on axis intervals, `perm[j-1] = j'`.
    perm: Vec<usize>,
    /// Gauge constant in the reference chart.
    delta_ref: f64,
    ref_chart: ChartId,
}

impl AxialLift {
    fn delta(&self, config: &MonopoleConfig, chart: ChartId) -> Result<f64> {
        let a_img = ChartId(self.perm[chart.0 - 1]);
        let r_img = ChartId(self.perm[self.ref_chart.0 - 1]);
        Ok(self.delta_ref
            + (config.chart_constant(a_img)? - config.chart_constant(r_img)?) * self.theta_offset)
    }

    fn apply_coords<S: Scalar>(
        &self,
        config: &MonopoleConfig,
        chart: ChartId,
        co: [S; 4],
    ) -> Result<(ChartId, [S; 4])> {
        let (r, th3, z, th1) = (co[0], co[1], co[2], co[3]);
        let x = r * th3.cos();
        let y = r * th3.sin();
        let img = self.iso.apply_coords([x, y, z]);
        let r2 = img[0] * img[0] + img[1] * img[1];
        let out_chart = ChartId(self.perm[chart.0 - 1]);
        let delta = S::from_f64(self.delta(config, chart)?);
        let th1_out = th1 * S::from_f64(self.sigma) + delta;
        if r2.re() <= 1e-24 {
            // axis to axis: θ₃ passes through unchanged (it is immaterial)
            return Ok((out_chart, [S::from_f64(0.0), th3, img[2], th1_out]));
        }
        let r_out = r2.sqrt();
        let th3_out = img[1].atan2(img[0]);
        Ok((out_chart, [r_out, th3_out, img[2], th1_out]))
    }
}

/// A map of the total space, supporting application on plain coordinates and
/// on jets (for Jacobians).
#[derive(Clone, Debug)]
pub enum BundleMap {
    Identity,
    /// Constant fiber rotation, the same in every chart.
    FiberRotation {
        angle: f64,
    },
    Axial(AxialLift),
    /// The chart-2-centred involution `((r,z), θ₃, θ₁) ↦ (φ(r,z), θ₁-ϑ, θ₃+ϑ)`
    /// for two monopole points.
    ExtraInvolution {
        c1: f64,
        c2: f64,
        vartheta: f64,
    },
    /// Composition, applied left to right.
    Composite(Vec<BundleMap>),
}

fn extra_base<S: Scalar>(c1: f64, c2: f64, r: S, z: S) -> (S, S) {
    // φ = √(L(w²)) with L(ζ) = -c₂²(ζ̄ + c₁²)/(ζ̄ + c₂²); the square root is
    // principal, mapping the upper half-plane onto the open quadrant.
    let zeta = (r * r - z * z, (r * z) * S::from_f64(2.0));
    let zbar = cx::conj(zeta);
    let num = cx::add(zbar, cx::cx(c1 * c1, 0.0));
    let den = cx::add(zbar, cx::cx(c2 * c2, 0.0));
    let l = cx::scale(S::from_f64(-c2 * c2), cx::div(num, den));
    cx::sqrt(l)
}

impl BundleMap {
    pub fn compose(outer: &BundleMap, inner: &BundleMap) -> BundleMap {
        let mut parts = Vec::new();
        let mut push = |m: &BundleMap| match m {
            BundleMap::Composite(v) => parts.extend(v.iter().cloned()),
            BundleMap::Identity => {}
            other => parts.push(other.clone()),
        };
        push(inner);
        push(outer);
        if parts.is_empty() {
            BundleMap::Identity
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            BundleMap::Composite(parts)
        }
    }

    /// Overall fiber sign where defined (+1 rotation-like, -1 reflection-like).
    pub fn fiber_sign(&self) -> Option<f64> {
        match self {
            BundleMap::Identity | BundleMap::FiberRotation { .. } => Some(1.0),
            BundleMap::Axial(a) => Some(a.sigma),
            BundleMap::ExtraInvolution { .. } => None,
            BundleMap::Composite(v) => v
                .iter()
                .try_fold(1.0, |acc, m| m.fiber_sign().map(|s| acc * s)),
        }
    }

    pub fn apply_coords<S: Scalar>(
        &self,
        config: &MonopoleConfig,
        chart: ChartId,
        co: [S; 4],
    ) -> Result<(ChartId, [S; 4])> {
        match self {
            BundleMap::Identity => Ok((chart, co)),
            BundleMap::FiberRotation { angle } => {
                let mut out = co;
                out[3] = out[3] + S::from_f64(*angle);
                Ok((chart, out))
            }
            BundleMap::Axial(a) => a.apply_coords(config, chart, co),
            BundleMap::ExtraInvolution { c1, c2, vartheta } => {
                let heights = config.heights()?;
                if heights.len() != 2 {
                    return Err(Error::BadConfig(
                        "the extra involution needs exactly two monopole points".into(),
                    ));
                }
                let (r, th3, z, th1) = (co[0], co[1], co[2], co[3]);
                let vt = S::from_f64(*vartheta);
                if r.re() > 0.0 {
                    // work in chart 2
                    let t_in = transition(config, chart, ChartId(2), 1.0)?;
                    let th1_c2 = th1 + th3 * S::from_f64(t_in);
                    let (r_out, z_out) = extra_base(*c1, *c2, r, z);
                    let th3_out = th1_c2 - vt;
                    let th1_out = th3 + vt;
                    Ok((ChartId(2), [r_out, th3_out, z_out, th1_out]))
                } else {
                    // on the axis the map is chartwise closed-form
                    let (_, z_out) = extra_base(*c1, *c2, r, z);
                    match chart.0 {
                        1 => Ok((
                            ChartId(1),
                            [
                                S::from_f64(0.0),
                                th3,
                                z_out,
                                S::from_f64(2.0 * *vartheta) - th1,
                            ],
                        )),
                        3 => Ok((ChartId(3), [S::from_f64(0.0), th3, z_out, th1])),
                        _ => Err(Error::Domain(
                            "the middle axis interval maps to the conformal boundary".into(),
                        )),
                    }
                }
            }
            BundleMap::Composite(parts) => {
                let mut cur_chart = chart;
                let mut cur = co;
                for m in parts {
                    let (c, v) = m.apply_coords(config, cur_chart, cur)?;
                    cur_chart = c;
                    cur = v;
                }
                Ok((cur_chart, cur))
            }
        }
    }

    pub fn apply(&self, config: &MonopoleConfig, p: &ChartPoint) -> Result<ChartPoint> {
        let (chart, co) = self.apply_coords(config, p.chart, p.coords())?;
        ChartPoint::new(config, chart, co[0], co[1], co[2], co[3])
    }
}

/// Distance between two total-space points, compared in a common chart.
pub fn point_distance(config: &MonopoleConfig, a: &ChartPoint, b: &ChartPoint) -> Result<f64> {
    let (a, b) = if a.chart == b.chart {
        (*a, *b)
    } else {
        (
            convert_chart(config, a, ChartId(2))?,
            convert_chart(config, b, ChartId(2))?,
        )
    };
    // θ₃ is immaterial on the axis
    let theta3_term = if a.r.abs() < 1e-12 {
        0.0
    } else {
        wrap_angle(a.theta3 - b.theta3).abs()
    };
    Ok((a.r - b.r).abs() + (a.z - b.z).abs() + theta3_term + wrap_angle(a.theta1 - b.theta1).abs())
}

/// Max distance of `m1` and `m2` over a sample set.
pub fn map_distance(
    config: &MonopoleConfig,
    m1: &BundleMap,
    m2: &BundleMap,
    samples: &[ChartPoint],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in samples {
        let a = m1.apply(config, p)?;
        let b = m2.apply(config, p)?;
        worst = worst.max(point_distance(config, &a, &b)?);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// gauge quadrature and the generic lift constructor
// ---------------------------------------------------------------------------

struct GaugeForm<'a> {
    config: &'a MonopoleConfig,
    iso: HyperbolicIsometry,
    sigma: f64,
    chart: ChartId,
    out_chart: ChartId,
}

impl GaugeForm<'_> {
    /// Components `(ν_r, ν_θ₃, ν_z)` of the 1-form whose potential is the
    /// fiber shift δ: `ν = φ*ω̃' - ω̃` (preserving) or `-(φ*ω̃' + ω̃)`.
    fn eval(&self, r: f64, th3: f64, z: f64) -> Result<[f64; 3]> {
        let heights = self.config.heights()?;
        let k_in = self.config.chart_constant(self.chart)?;
        let k_out = self.config.chart_constant(self.out_chart)?;
        let rr = Dual4::var(r, 0);
        let tt = Dual4::var(th3, 1);
        let zz = Dual4::var(z, 2);
        let x = rr * tt.cos();
        let y = rr * tt.sin();
        let img = self.iso.apply_coords([x, y, zz]);
        let r_img = (img[0] * img[0] + img[1] * img[1]).sqrt();
        let th3_img = img[1].atan2(img[0]);
        let ft_img = f_total(heights, r_img, img[2]).v + k_out;
        let ft_here = f_total(heights, r, z) + k_in;
        // φ*(f̃' dθ₃) = f̃'(φ) dθ₃∘φ
        let pulled = [
            ft_img * th3_img.d[0],
            ft_img * th3_img.d[1],
            ft_img * th3_img.d[2],
        ];
        Ok(if self.sigma > 0.0 {
            [pulled[0], pulled[1] - ft_here, pulled[2]]
        } else {
            [-pulled[0], -(pulled[1] + ft_here), -pulled[2]]
        })
    }

    /// ∫ ν along the straight segment between base points (θ₃ leg separate).
    fn integrate_segment(&self, from: (f64, f64, f64), to: (f64, f64, f64)) -> Result<f64> {
        // from/to = (r, θ₃, z); the path varies all three linearly
        let mut total = 0.0;
        let segs = 8;
        for s in 0..segs {
            let (t0, t1) = (s as f64 / segs as f64, (s + 1) as f64 / segs as f64);
            for (node, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
                let t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * node;
                let r = from.0 + (to.0 - from.0) * t;
                let th = from.1 + (to.1 - from.1) * t;
                let z = from.2 + (to.2 - from.2) * t;
                let nu = self.eval(r, th, z)?;
                let integrand =
                    nu[0] * (to.0 - from.0) + nu[1] * (to.1 - from.1) + nu[2] * (to.2 - from.2);
                total += w * 0.5 * (t1 - t0) * integrand;
            }
        }
        Ok(total)
    }
}

fn axis_chart_perm(config: &MonopoleConfig, iso: &HyperbolicIsometry) -> Result<Vec<usize>> {
    let mut perm = Vec::with_capacity(config.num_charts());
    for chart in config.charts() {
        let z = config.interval_midpoint(chart)?;
        let img = iso.apply(&HyperbolicPoint::on_axis(z)?);
        if img.x.abs() > 1e-9 || img.y.abs() > 1e-9 {
            return Err(Error::Domain(
                "isometry does not preserve the monopole axis".into(),
            ));
        }
        perm.push(config.chart_of_axis_point(img.z)?.0);
    }
    let mut seen = vec![false; config.num_charts()];
    for &j in &perm {
        if seen[j - 1] {
            return Err(Error::Numerical("chart permutation not bijective".into()));
        }
        seen[j - 1] = true;
    }
    Ok(perm)
}

fn check_set_preserved(config: &MonopoleConfig, iso: &HyperbolicIsometry, tau: f64) -> Result<()> {
    let mut worst: f64 = 0.0;
    for p in config.points() {
        let img = iso.apply(p);
        let d = config.min_distance_to_monopole(&img);
        worst = worst.max(d);
    }
    if worst > tau {
        return Err(Error::SetNotPreserved(worst));
    }
    Ok(())
}

/// Options for [`lift_isometry`].
#[derive(Clone, Copy, Debug)]
pub struct LiftOptions {
    /// Require the anchor fiber (point) to be fixed by the lift.
    pub fix_anchor: bool,
    /// Tolerance for the monopole-set preservation check.
    pub tau: f64,
    /// Threshold on the path-independence defect of the gauge quadrature.
    pub path_tol: f64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            fix_anchor: false,
            tau: 1e-9,
            path_tol: 1e-8,
        }
    }
}

/// Constructs the lift of an axis-preserving isometry of the monopole set,
/// normalized at the anchor.
///
/// The fiber shift is obtained by integrating the pulled-back connection
/// difference from the anchor; path independence is verified on two
/// independent paths rather than assumed, and the shift must come out
/// chartwise constant.
pub fn lift_isometry(
    config: &MonopoleConfig,
    iso: &HyperbolicIsometry,
    anchor: &ChartPoint,
    opts: LiftOptions,
) -> Result<BundleMap> {
    config.heights()?;
    check_set_preserved(config, iso, opts.tau)?;
    let perm = axis_chart_perm(config, iso)?;
    let sigma = iso.orientation().sign();

    // θ₃ offset of the base map, read off away from the axis
    let probe = HyperbolicPoint::new(1.0, 0.0, config.interval_midpoint(ChartId(1))?)?;
    let img = iso.apply(&probe);
    let theta_offset = img.y.atan2(img.x);

    // consistency: the fiber shift must be θ₃-free in every chart
    {
        let eps = {
            let p2 = iso.apply(&HyperbolicPoint::new(
                (0.3f64).cos(),
                (0.3f64).sin(),
                probe.z,
            )?);
            let d = wrap_angle(p2.y.atan2(p2.x) - theta_offset);
            if d > 0.0 {
                1.0
            } else {
                -1.0
            }
        };
        let k = |c: usize| config.chart_constant(ChartId(c)).unwrap();
        let r = anchor.chart.0;
        for a in 1..=config.num_charts() {
            let coeff = sigma * (k(r) - k(a)) + eps * (k(perm[a - 1]) - k(perm[r - 1]));
            if coeff.abs() > 1e-9 {
                return Err(Error::Numerical(format!(
                    "fiber shift would depend on θ₃ in chart {a} (coeff {coeff:.2e})"
                )));
            }
        }
    }

    // gauge quadrature: the local potential must be path independent and,
    // for these isometries, constant; measure it from the anchor.
    let form = GaugeForm {
        config,
        iso: *iso,
        sigma,
        chart: anchor.chart,
        out_chart: ChartId(perm[anchor.chart.0 - 1]),
    };
    let a0 = (anchor.r.max(0.35), anchor.theta3, anchor.z);
    let mut max_delta: f64 = 0.0;
    let mut max_path_defect: f64 = 0.0;
    for &(r, z) in &[(0.45, 0.55), (1.7, 0.8), (0.9, 2.6), (2.2, 2.1)] {
        let th = 1.1;
        // path A: move in (r, z) first, then in θ₃
        let d_a = form.integrate_segment(a0, (r, a0.1, z))?
            + form.integrate_segment((r, a0.1, z), (r, th, z))?;
        // path B: θ₃ first, then (r, z)
        let d_b = form.integrate_segment(a0, (a0.0, th, a0.2))?
            + form.integrate_segment((a0.0, th, a0.2), (r, th, z))?;
        max_path_defect = max_path_defect.max((d_a - d_b).abs());
        max_delta = max_delta.max(d_a.abs());
    }
    if max_path_defect > opts.path_tol {
        return Err(Error::PathDependence(max_path_defect));
    }
    if max_delta > opts.path_tol {
        return Err(Error::Numerical(format!(
            "gauge shift is not constant (spread {max_delta:.2e}); not a toric stabilizer element"
        )));
    }

    let delta_ref = if opts.fix_anchor {
        let base = anchor.base();
        let img = iso.apply(&base);
        let moved = distance(&base, &img);
        if moved > opts.tau.max(1e-9) {
            return Err(Error::BaseNotFixed(moved));
        }
        if sigma > 0.0 {
            0.0
        } else {
            2.0 * anchor.theta1
        }
    } else {
        0.0
    };

    Ok(BundleMap::Axial(AxialLift {
        iso: *iso,
        sigma,
        theta_offset,
        perm,
        delta_ref,
        ref_chart: anchor.chart,
    }))
}

// ---------------------------------------------------------------------------
// rotation families
// ---------------------------------------------------------------------------

/// The `S¹`-family of lifts of rotations about the axis, indexed so that the
/// fibers over `I₂` rotate with speed `k`; transitions then force speed
/// `k + (j - 2)` over `I_j`.
#[derive(Clone, Copy, Debug)]
pub struct RotationFamily {
    pub k: i64,
}

pub fn lift_rotation_family(config: &MonopoleConfig, k: i64) -> Result<RotationFamily> {
    config.heights()?;
    if config.num_charts() < 2 {
        return Err(Error::BadConfig("need at least one monopole".into()));
    }
    Ok(RotationFamily { k })
}

impl RotationFamily {
    pub fn at(&self, config: &MonopoleConfig, theta: f64) -> Result<BundleMap> {
        let n_charts = config.num_charts();
        Ok(BundleMap::Axial(AxialLift {
            iso: rotation_about_z(theta),
            sigma: 1.0,
            theta_offset: theta,
            perm: (1..=n_charts).collect(),
            delta_ref: self.k as f64 * theta,
            ref_chart: ChartId(2),
        }))
    }

    /// Fiber rotation speed over the axis interval `I_j`.
    pub fn fiber_speed(&self, j: usize) -> i64 {
        self.k + j as i64 - 2
    }
}

// ---------------------------------------------------------------------------
// extra involution
// ---------------------------------------------------------------------------

/// The involution `Λ̃(ϑ)` for a two-point configuration.
pub fn extra_involution(config: &MonopoleConfig, vartheta: f64) -> Result<BundleMap> {
    let h = config.heights()?;
    if h.len() != 2 {
        return Err(Error::BadConfig(
            "extra involution requires exactly two monopole points".into(),
        ));
    }
    Ok(BundleMap::ExtraInvolution {
        c1: h[0],
        c2: h[1],
        vartheta,
    })
}

/// The base map of `Λ̃` on the axis: `φ(0, z)` (defined off the middle
/// interval).
pub fn extra_involution_axis_image(c1: f64, c2: f64, z: f64) -> f64 {
    extra_base(c1, c2, 0.0, z).1
}

// ---------------------------------------------------------------------------
// involution correction and generators
// ---------------------------------------------------------------------------

/// Measures the constant fiber rotation in `map²` and corrects the map into
/// an involution. For fiber-reflecting maps the square is the identity as
/// soon as it is a constant rotation fixing a point, so the measured
/// constant must vanish; for fiber-rotating maps the correction composes
/// with the half-angle rotation (branch in `(-π, π]`).
pub fn make_involution(
    config: &MonopoleConfig,
    map: &BundleMap,
    samples: &[ChartPoint],
) -> Result<BundleMap> {
    let square = BundleMap::compose(map, map);
    // the square must cover the identity and act by a constant rotation
    let mut shift: Option<f64> = None;
    for p in samples {
        let q = square.apply(config, p)?;
        let mut base_moved = (q.r - p.r).abs() + (q.z - p.z).abs();
        if p.r > 1e-12 {
            base_moved += wrap_angle(q.theta3 - p.theta3).abs() * p.r;
        }
        if base_moved > 1e-9 {
            return Err(Error::Numerical(format!(
                "square does not cover the identity (base moved {base_moved:.2e})"
            )));
        }
        let q2 = convert_chart(config, &q, p.chart)?;
        let s = wrap_angle(q2.theta1 - p.theta1);
        match shift {
            None => shift = Some(s),
            Some(prev) => {
                if wrap_angle(s - prev).abs() > 1e-9 {
                    return Err(Error::Numerical(
                        "square is not a constant fiber rotation".into(),
                    ));
                }
            }
        }
    }
    let g = shift.unwrap_or(0.0);
    if g.abs() < 1e-10 {
        return Ok(map.clone());
    }
    match map.fiber_sign() {
        Some(s) if s > 0.0 => Ok(BundleMap::compose(
            map,
            &BundleMap::FiberRotation { angle: -0.5 * g },
        )),
        _ => Err(Error::Numerical(format!(
            "fiber-reflecting map squares to a nontrivial rotation ({g:.2e})"
        ))),
    }
}

/// The involution generators over a collinear configuration.
pub struct InvolutionGenerators {
    /// Lift of the reflection in a vertical plane through the axis.
    pub phi3: BundleMap,
    /// Lift of the rotation by π about the orthogonal geodesic (symmetric
    /// configurations only).
    pub phi1: Option<BundleMap>,
    /// `Φ₂ = Φ₁ ∘ Φ₃` (symmetric configurations only).
    pub phi2: Option<BundleMap>,
    /// Radius of the inversion hemisphere when the configuration is
    /// symmetric.
    pub midpoint_radius: Option<f64>,
}

impl InvolutionGenerators {
    /// `Φ₂`, failing for configurations without the midpoint symmetry.
    pub fn phi2_required(&self) -> Result<&BundleMap> {
        self.phi2.as_ref().ok_or(Error::NotSymmetric)
    }

    /// `Φ₁`, failing for configurations without the midpoint symmetry.
    pub fn phi1_required(&self) -> Result<&BundleMap> {
        self.phi1.as_ref().ok_or(Error::NotSymmetric)
    }
}

/// Builds `Φ₃` (always) and `Φ₁, Φ₂` (when the heights are symmetric about a
/// midpoint in the log scale).
pub fn involution_generators(config: &MonopoleConfig) -> Result<InvolutionGenerators> {
    let h = config.heights()?.to_vec();
    let tau = 1e-9;

    // Φ₃: reflection in the xz-plane, which contains the whole axis.
    let plane = reflection_vertical_plane([0.0, 1.0], 0.0)?;
    let anchor = ChartPoint::new(
        config,
        ChartId(2),
        1.0,
        0.0,
        config.interval_midpoint(ChartId(2))?,
        0.0,
    )?;
    let phi3_raw = lift_isometry(
        config,
        &plane,
        &anchor,
        LiftOptions {
            fix_anchor: true,
            ..Default::default()
        },
    )?;
    let samples = sample_chart_points(
        config,
        10,
        7,
        "involution-correction",
        (0.4, 2.0),
        (0.4, 3.0),
    );
    let phi3 = make_involution(config, &phi3_raw, &samples)?;

    // symmetric part
    let n = h.len();
    let m2 = h[0] * h[n - 1];
    let symmetric = h
        .iter()
        .all(|&c| h.iter().any(|&c2| (m2 / c - c2).abs() < tau * (1.0 + c2)));
    if !symmetric {
        return Ok(InvolutionGenerators {
            phi3,
            phi1: None,
            phi2: None,
            midpoint_radius: None,
        });
    }
    let m = m2.sqrt();
    let inv = reflection_hemisphere([0.0, 0.0], m)?;
    // φ₁ = φ₂ ∘ φ₃ fixes the half-circle geodesic {y = 0, |w| = m}
    let phi1_iso = inv.compose(&plane);
    let gamma_pt = ChartPoint::new(
        config,
        ChartId(2),
        m / 2f64.sqrt(),
        0.0,
        m / 2f64.sqrt(),
        0.0,
    )?;
    let phi1 = lift_isometry(
        config,
        &phi1_iso,
        &gamma_pt,
        LiftOptions {
            fix_anchor: true,
            ..Default::default()
        },
    )?;
    // involution by construction; verify rather than correct
    let defect = map_distance(
        config,
        &BundleMap::compose(&phi1, &phi1),
        &BundleMap::Identity,
        &samples,
    )?;
    if defect > 1e-8 {
        return Err(Error::Numerical(format!(
            "μ-lift of the geodesic rotation is not an involution (defect {defect:.2e})"
        )));
    }
    let phi2 = BundleMap::compose(&phi1, &phi3);
    Ok(InvolutionGenerators {
        phi3,
        phi1: Some(phi1),
        phi2: Some(phi2),
        midpoint_radius: Some(m),
    })
}

// ---------------------------------------------------------------------------
// conformality certification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ConformalityReport {
    /// Max of ‖Φ*g - λ̂ g‖_F / ‖g‖_F over the samples.
    pub max_deviation: f64,
    /// Max of |λ̂ - (z∘Φ / z)²| (isometry lifts only; NaN otherwise).
    pub max_factor_mismatch: f64,
    pub samples_used: usize,
    pub skipped: usize,
    pub worst: Option<[f64; 4]>,
}

/// Pullback test of conformality: `Φ*g = λ̂ g` with `λ̂ = tr(g⁻¹ Φ*g)/4`.
///
/// `check_factor` additionally compares `λ̂` against `((z∘Φ)/z)²`, the exact
/// factor for lifts of hyperbolic isometries.
pub fn verify_conformal(
    config: &MonopoleConfig,
    map: &BundleMap,
    samples: &[ChartPoint],
    check_factor: bool,
) -> Result<ConformalityReport> {
    let mut max_dev: f64 = 0.0;
    let mut max_fac: f64 = if check_factor { 0.0 } else { f64::NAN };
    let mut used = 0;
    let mut skipped = 0;
    let mut worst = None;
    for p in samples {
        if p.r < R_MIN {
            skipped += 1;
            continue;
        }
        // Jacobian of the full 4-D map by dual numbers
        let vars: [Dual4; 4] = std::array::from_fn(|i| Dual4::var(p.coords()[i], i));
        let (out_chart, out) = map.apply_coords(config, p.chart, vars)?;
        if out[0].v < 1e-3 || out[2].v <= 1e-6 {
            // image too close to the axis for the cylindrical frame
            skipped += 1;
            continue;
        }
        let mut jac = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                jac[i][j] = out[i].d[j];
            }
        }
        let g = metric_at(config, p, Frame::Cylindrical)?.g;
        let q = ChartPoint::new(config, out_chart, out[0].v, out[1].v, out[2].v, out[3].v)?;
        let gq = metric_at(config, &q, Frame::Cylindrical)?.g;
        // pullback (JᵀG'J)
        let mut pb = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        s += jac[i][a] * gq[i][j] * jac[j][b];
                    }
                }
                pb[a][b] = s;
            }
        }
        let ginv = mat4_inv(&g)?;
        let mut lambda = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                lambda += ginv[a][b] * pb[b][a];
            }
        }
        lambda /= 4.0;
        let (mut num, mut den) = (0.0, 0.0);
        for a in 0..4 {
            for b in 0..4 {
                num += (pb[a][b] - lambda * g[a][b]).powi(2);
                den += g[a][b] * g[a][b];
            }
        }
        let dev = (num / den).sqrt();
        if dev > max_dev {
            max_dev = dev;
            worst = Some(p.coords());
        }
        if check_factor {
            let expected = (out[2].v / p.z).powi(2);
            max_fac = max_fac.max((lambda - expected).abs());
        }
        used += 1;
    }
    if used == 0 {
        return Err(Error::Numerical("no usable conformality samples".into()));
    }
    Ok(ConformalityReport {
        max_deviation: max_dev,
        max_factor_mismatch: max_fac,
        samples_used: used,
        skipped,
        worst,
    })
}

/// Seeded chart-2 sample points on the free locus, away from the axis and
/// the monopole points.
pub fn sample_chart_points(
    config: &MonopoleConfig,
    count: usize,
    seed: u64,
    stage: &str,
    r_range: (f64, f64),
    z_range: (f64, f64),
) -> Vec<ChartPoint> {
    let mut rng = rng_for(seed, stage);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(r_range.0..r_range.1);
        let z = rng.gen_range(z_range.0..z_range.1);
        let th3 = rng.gen_range(-3.0..3.0);
        let th1 = rng.gen_range(-3.0..3.0);
        let p = match ChartPoint::new(config, ChartId(2), r, th3, z, th1) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if config.min_distance_to_monopole(&p.base()) < 0.2 {
            continue;
        }
        out.push(p);
    }
    out
}

// ---------------------------------------------------------------------------
// fixed points in fibers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FiberFixedSet {
    /// Fiber reflection: exactly two fixed angles, π apart.
    Two([f64; 2]),
    /// Nontrivial fiber rotation: no fixed point.
    Empty,
    /// The whole fiber is fixed.
    All,
}

impl FiberFixedSet {
    pub fn count(&self) -> usize {
        match self {
            FiberFixedSet::Two(_) => 2,
            FiberFixedSet::Empty => 0,
            FiberFixedSet::All => usize::MAX,
        }
    }
}

/// Fixed points of a lift in the fiber over a base point fixed by the base
/// isometry.
pub fn fixed_points_in_fiber(
    config: &MonopoleConfig,
    map: &BundleMap,
    base: &HyperbolicPoint,
) -> Result<FiberFixedSet> {
    let r = (base.x * base.x + base.y * base.y).sqrt();
    let chart = if r > 1e-12 {
        ChartId(2)
    } else {
        config.chart_of_axis_point(base.z)?
    };
    let th3 = base.y.atan2(base.x);
    let probe = |th1: f64| -> Result<(f64, f64)> {
        let p = ChartPoint::new(config, chart, r, th3, base.z, th1)?;
        let q = map.apply(config, &p)?;
        let moved = (q.r - p.r).abs()
            + (q.z - p.z).abs()
            + if r > 1e-12 {
                wrap_angle(q.theta3 - p.theta3).abs() * r
            } else {
                0.0
            };
        let q_here = convert_chart(config, &q, chart).or(Ok::<ChartPoint, Error>(q))?;
        Ok((moved, q_here.theta1))
    };
    let (m0, t0) = probe(0.0)?;
    let (m1, t1) = probe(1.0)?;
    let moved = m0.max(m1);
    if moved > 1e-8 {
        return Err(Error::BaseNotFixed(moved));
    }
    let sigma = wrap_angle(t1 - t0);
    let delta = wrap_angle(t0);
    if (sigma - 1.0).abs() < 1e-8 {
        // rotation by delta
        if delta.abs() < 1e-10 {
            Ok(FiberFixedSet::All)
        } else {
            Ok(FiberFixedSet::Empty)
        }
    } else if (sigma + 1.0).abs() < 1e-8 {
        // reflection: θ = -θ + δ has solutions δ/2 and δ/2 + π
        let a = wrap_angle(0.5 * delta);
        Ok(FiberFixedSet::Two([
            a,
            wrap_angle(a + std::f64::consts::PI),
        ]))
    } else {
        Err(Error::Numerical(format!(
            "fiber action is not affine with slope ±1 (slope {sigma})"
        )))
    }
}

// ---------------------------------------------------------------------------
// group tables
// ---------------------------------------------------------------------------

/// Builds the composition table of a finite set of maps (pointwise on a
/// seeded sample set) and identifies the abstract group.
pub fn group_table(
    config: &MonopoleConfig,
    maps: &[BundleMap],
    seed: u64,
    tol: f64,
) -> Result<(GroupId, Vec<Vec<usize>>)> {
    let samples = sample_chart_points(config, 50, seed, "group-table", (0.5, 2.0), (0.5, 3.0));
    let n = maps.len();
    let find = |m: &BundleMap| -> Result<usize> {
        let mut best = (f64::INFINITY, usize::MAX);
        for (i, cand) in maps.iter().enumerate() {
            let d = map_distance(config, m, cand, &samples)?;
            if d < best.0 {
                best = (d, i);
            }
        }
        if best.0 > tol {
            return Err(Error::Numerical(format!(
                "set is not closed under composition (nearest at distance {:.2e})",
                best.0
            )));
        }
        Ok(best.1)
    };
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = BundleMap::compose(&maps[i], &maps[j]);
            table[i][j] = find(&prod)?;
        }
    }
    let id = group::identify(&table)?;
    Ok((id, table))
}

// ---------------------------------------------------------------------------
// the fixed circle of the quadrant involution
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct FixedCircle {
    /// Center in the `(x₁, x₂)` half-plane.
    pub center: (f64, f64),
    pub radius: f64,
    /// Circle-fit residual over the located fixed points.
    pub fit_residual: f64,
    /// Residual of mapping circle points by the involution.
    pub invariance_residual: f64,
    /// Intersections of the fixed set of `φ` with the z-axis.
    pub axis_crossings: (f64, f64),
}

fn l_map(c1: f64, c2: f64, zeta: (f64, f64)) -> (f64, f64) {
    let zbar = (zeta.0, -zeta.1);
    let num = (zbar.0 + c1 * c1, zbar.1);
    let den = (zbar.0 + c2 * c2, zbar.1);
    let q = cx::div::<f64>(num, den);
    (-c2 * c2 * q.0, -c2 * c2 * q.1)
}

/// Locates the fixed-point set of the half-plane involution `L` numerically,
/// fits a circle to it, and finds the two axis crossings of the quadrant map
/// `φ`.
pub fn fixed_circle_of_varphi(c1: f64, c2: f64) -> Result<FixedCircle> {
    if !(0.0 < c1 && c1 < c2) {
        return Err(Error::Domain("need 0 < c₁ < c₂".into()));
    }
    // Newton on F(ζ) = L(ζ) - ζ from a grid of starts
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let f = |p: (f64, f64)| {
        let l = l_map(c1, c2, p);
        (l.0 - p.0, l.1 - p.1)
    };
    let span = 3.0 * c2 * c2;
    for i in 0..8 {
        for j in 1..=6 {
            let mut p = (
                -span + 2.0 * span * (i as f64 + 0.5) / 8.0,
                span * j as f64 / 6.0,
            );
            let mut converged = false;
            for _ in 0..60 {
                let fv = f(p);
                let res = (fv.0 * fv.0 + fv.1 * fv.1).sqrt();
                if res < 1e-12 {
                    converged = true;
                    break;
                }
                let h = 1e-6 * (1.0 + p.0.abs() + p.1.abs());
                let fx = f((p.0 + h, p.1));
                let fy = f((p.0, p.1 + h));
                let j00 = (fx.0 - fv.0) / h;
                let j10 = (fx.1 - fv.1) / h;
                let j01 = (fy.0 - fv.0) / h;
                let j11 = (fy.1 - fv.1) / h;
                let det = j00 * j11 - j01 * j10;
                if det.abs() < 1e-14 {
                    break;
                }
                let dx = (fv.0 * j11 - fv.1 * j01) / det;
                let dy = (fv.1 * j00 - fv.0 * j10) / det;
                p = (p.0 - dx, p.1 - dy);
                if p.1 <= 0.0 {
                    break;
                }
            }
            if converged && p.1 > 1e-9 {
                pts.push(p);
            }
        }
    }
    if pts.len() < 8 {
        return Err(Error::Numerical(format!(
            "found only {} fixed points of the involution",
            pts.len()
        )));
    }
    // least-squares circle fit: x² + y² = 2ax + 2by + c
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for &(x, y) in &pts {
        let row = [2.0 * x, 2.0 * y, 1.0];
        let val = x * x + y * y;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * val;
        }
    }
    // solve the 3×3 normal equations
    let sol = {
        let mut a = m;
        let mut b = rhs;
        for col in 0..3 {
            let mut piv = col;
            for r in col + 1..3 {
                if a[r][col].abs() > a[piv][col].abs() {
                    piv = r;
                }
            }
            a.swap(col, piv);
            b.swap(col, piv);
            let d = a[col][col];
            for c in 0..3 {
                a[col][c] /= d;
            }
            b[col] /= d;
            for r in 0..3 {
                if r != col {
                    let f = a[r][col];
                    for c in 0..3 {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
        b
    };
    let center = (sol[0], sol[1]);
    let radius = (sol[2] + sol[0] * sol[0] + sol[1] * sol[1]).sqrt();
    let mut fit: f64 = 0.0;
    let mut inv_res: f64 = 0.0;
    for &(x, y) in &pts {
        let d = ((x - center.0).powi(2) + (y - center.1).powi(2)).sqrt();
        fit = fit.max((d - radius).abs() / radius);
        let (lx, ly) = l_map(c1, c2, (x, y));
        let d2 = ((lx - center.0).powi(2) + (ly - center.1).powi(2)).sqrt();
        inv_res = inv_res.max((d2 - radius).abs() / radius);
    }
    // axis crossings of φ: solve φ₂(0, z) = z on I₁ and I₃ by bisection
    let g1 = |z: f64| extra_involution_axis_image(c1, c2, z) - z;
    let bisect = |mut lo: f64, mut hi: f64, f: &dyn Fn(f64) -> f64| -> f64 {
        let mut flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if (hi - lo).abs() < 1e-14 * (1.0 + hi.abs()) {
                return mid;
            }
            if (fm > 0.0) == (flo > 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let z1 = bisect(1e-9, c1 - 1e-9, &g1);
    let z3 = bisect(c2 + 1e-9, 50.0 * c2, &g1);
    Ok(FixedCircle {
        center,
        radius,
        fit_residual: fit,
        invariance_residual: inv_res,
        axis_crossings: (z1, z3),
    })
}

// ---------------------------------------------------------------------------
// helper metric field view (needed by verify_conformal users)
// ---------------------------------------------------------------------------

/// Convenience: the standard lifted generators for tests and suites.
pub fn hemisphere_inversion_lift(config: &MonopoleConfig) -> Result<BundleMap> {
    let h = config.heights()?;
    let m = (h[0] * h[h.len() - 1]).sqrt();
    let iso = reflection_hemisphere([0.0, 0.0], m)?;
    let anchor = ChartPoint::new(config, ChartId(2), m, 0.0, m / 2f64.sqrt(), 0.0)?;
    lift_isometry(config, &iso, &anchor, LiftOptions::default())
}

pub use hyperbolic::TAU_GEO;
