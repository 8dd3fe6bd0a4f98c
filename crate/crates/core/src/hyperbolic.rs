//! Upper-half-space hyperbolic 3-geometry.
//!
//! Points live in `H³ = {(x, y, z) : z > 0}`. Orientation-preserving
//! isometries act as quaternionic Möbius transformations
//! `w ↦ (aw + b)(cw + d)⁻¹` on `w = x + yi + zj` with `ad - bc = 1`;
//! orientation-reversing ones apply `w ↦ -w̄` first. Geodesics are vertical
//! lines or semicircles orthogonal to the boundary plane.

use num_complex::Complex64;

use crate::dual::Scalar;
use crate::{Error, Result};

/// Default incidence tolerance, in arclength units.
pub const TAU_GEO: f64 = 1e-9;

const DET_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HyperbolicPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() || !x.is_finite() || !y.is_finite() {
            return Err(Error::NotUpperHalfSpace(z));
        }
        Ok(HyperbolicPoint { x, y, z })
    }

    pub fn on_axis(z: f64) -> Result<Self> {
        Self::new(0.0, 0.0, z)
    }

    fn euclid_dist_sq(&self, o: &Self) -> f64 {
        (self.x - o.x).powi(2) + (self.y - o.y).powi(2) + (self.z - o.z).powi(2)
    }
}

/// Hyperbolic distance in the upper half-space model.
pub fn distance(p: &HyperbolicPoint, q: &HyperbolicPoint) -> f64 {
    let arg = 1.0 + p.euclid_dist_sq(q) / (2.0 * p.z * q.z);
    // guard against arg = 1 - eps from roundoff
    arg.max(1.0).acosh()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Preserving => 1.0,
            Orientation::Reversing => -1.0,
        }
    }
}

// ---------------------------------------------------------------------------
// quaternion helpers, generic over the scalar so jets can flow through
// ---------------------------------------------------------------------------

type Quat<S> = [S; 4];

fn quat_from_cx<S: Scalar>(c: Complex64) -> Quat<S> {
    [
        S::from_f64(c.re),
        S::from_f64(c.im),
        S::from_f64(0.0),
        S::from_f64(0.0),
    ]
}

fn quat_mul<S: Scalar>(a: &Quat<S>, b: &Quat<S>) -> Quat<S> {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_inv<S: Scalar>(a: &Quat<S>) -> Quat<S> {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]).recip();
    [a[0] * n, -a[1] * n, -a[2] * n, -a[3] * n]
}

/// An isometry of `H³`, stored as normalized `(a, b, c, d)` plus the
/// orientation flag.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicIsometry {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    orientation: Orientation,
}

impl HyperbolicIsometry {
    /// Normalizes the coefficients so that `ad - bc = 1`.
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        orientation: Orientation,
    ) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < DET_TOL {
            return Err(Error::SingularIsometry(det.norm()));
        }
        let s = det.sqrt();
        Ok(HyperbolicIsometry {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
            orientation,
        })
    }

    pub fn identity() -> Self {
        HyperbolicIsometry {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            orientation: Orientation::Preserving,
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Applies the isometry with generic coordinates `(x, y, z)`.
    pub fn apply_coords<S: Scalar>(&self, p: [S; 3]) -> [S; 3] {
        let w: Quat<S> = match self.orientation {
            Orientation::Preserving => [p[0], p[1], p[2], S::from_f64(0.0)],
            // w ↦ -w̄ flips only the real part for w = x + yi + zj
            Orientation::Reversing => [-p[0], p[1], p[2], S::from_f64(0.0)],
        };
        let num = {
            let aw = quat_mul(&quat_from_cx::<S>(self.a), &w);
            [
                aw[0] + S::from_f64(self.b.re),
                aw[1] + S::from_f64(self.b.im),
                aw[2],
                aw[3],
            ]
        };
        let den = {
            let cw = quat_mul(&quat_from_cx::<S>(self.c), &w);
            [
                cw[0] + S::from_f64(self.d.re),
                cw[1] + S::from_f64(self.d.im),
                cw[2],
                cw[3],
            ]
        };
        let r = quat_mul(&num, &quat_inv(&den));
        // The k-component vanishes identically for normalized coefficients.
        [r[0], r[1], r[2]]
    }

    pub fn apply(&self, p: &HyperbolicPoint) -> HyperbolicPoint {
        let r = self.apply_coords([p.x, p.y, p.z]);
        HyperbolicPoint {
            x: r[0],
            y: r[1],
            z: r[2].max(f64::MIN_POSITIVE),
        }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        // Conjugation by w ↦ -w̄ maps the Möbius matrix M to
        // τ(M) = [[ā, -b̄], [-c̄, d̄]], so (M₁,ε₁)(M₂,ε₂) = (M₁ τ^ε₁(M₂), ε₁ε₂).
        let (a2, b2, c2, d2) = match self.orientation {
            Orientation::Preserving => (other.a, other.b, other.c, other.d),
            Orientation::Reversing => (
                other.a.conj(),
                -other.b.conj(),
                -other.c.conj(),
                other.d.conj(),
            ),
        };
        let orientation = if self.orientation == other.orientation {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        };
        HyperbolicIsometry {
            a: self.a * a2 + self.b * c2,
            b: self.a * b2 + self.b * d2,
            c: self.c * a2 + self.d * c2,
            d: self.c * b2 + self.d * d2,
            orientation,
        }
    }

    pub fn inverse(&self) -> Self {
        let (a, b, c, d) = (self.d, -self.b, -self.c, self.a);
        match self.orientation {
            Orientation::Preserving => HyperbolicIsometry {
                a,
                b,
                c,
                d,
                orientation: Orientation::Preserving,
            },
            // (M,ε)⁻¹ = (τ(M⁻¹), ε) for ε reversing
            Orientation::Reversing => HyperbolicIsometry {
                a: a.conj(),
                b: -b.conj(),
                c: -c.conj(),
                d: d.conj(),
                orientation: Orientation::Reversing,
            },
        }
    }
}

/// Rotation by `theta` about the z-axis (orientation-preserving).
pub fn rotation_about_z(theta: f64) -> HyperbolicIsometry {
    let h = Complex64::from_polar(1.0, theta / 2.0);
    HyperbolicIsometry {
        a: h,
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: h.conj(),
        orientation: Orientation::Preserving,
    }
}

/// Inversion in the hemisphere of the given boundary center and radius.
pub fn reflection_hemisphere(center: [f64; 2], radius: f64) -> Result<HyperbolicIsometry> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!(
            "hemisphere radius must be positive, got {radius}"
        )));
    }
    let g = Complex64::new(center[0], center[1]);
    HyperbolicIsometry::new(
        g,
        g * g.conj() - radius * radius,
        Complex64::new(1.0, 0.0),
        g.conj(),
        Orientation::Reversing,
    )
}

/// Reflection in the vertical plane `{ (x, y)·normal = offset }`.
pub fn reflection_vertical_plane(normal: [f64; 2], offset: f64) -> Result<HyperbolicIsometry> {
    let nn = (normal[0] * normal[0] + normal[1] * normal[1]).sqrt();
    if nn == 0.0 {
        return Err(Error::Domain("plane normal must be nonzero".into()));
    }
    let n = Complex64::new(normal[0] / nn, normal[1] / nn);
    let h = offset / nn;
    HyperbolicIsometry::new(
        n,
        Complex64::new(2.0 * h, 0.0),
        Complex64::new(0.0, 0.0),
        n.conj(),
        Orientation::Reversing,
    )
}

// ---------------------------------------------------------------------------
// geodesics
// ---------------------------------------------------------------------------

/// A complete geodesic of `H³`.
#[derive(Clone, Debug)]
pub enum Geodesic {
    /// Vertical half-line over a boundary point.
    VerticalLine { foot: [f64; 2] },
    /// Semicircle orthogonal to the boundary with the given endpoints.
    Semicircle { e1: [f64; 2], e2: [f64; 2] },
}

impl Geodesic {
    /// Möbius map sending this geodesic to the z-axis.
    fn to_axis(&self) -> HyperbolicIsometry {
        match self {
            Geodesic::VerticalLine { foot } => {
                // translate the foot to the origin
                HyperbolicIsometry {
                    a: Complex64::new(1.0, 0.0),
                    b: Complex64::new(-foot[0], -foot[1]),
                    c: Complex64::new(0.0, 0.0),
                    d: Complex64::new(1.0, 0.0),
                    orientation: Orientation::Preserving,
                }
            }
            Geodesic::Semicircle { e1, e2 } => {
                let p = Complex64::new(e1[0], e1[1]);
                let q = Complex64::new(e2[0], e2[1]);
                // w ↦ (w - p)(w - q)⁻¹ sends p ↦ 0, q ↦ ∞
                HyperbolicIsometry::new(
                    Complex64::new(1.0, 0.0),
                    -p,
                    Complex64::new(1.0, 0.0),
                    -q,
                    Orientation::Preserving,
                )
                .expect("distinct endpoints")
            }
        }
    }

    /// Hyperbolic distance from a point to the geodesic.
    pub fn distance_to(&self, p: &HyperbolicPoint) -> f64 {
        let m = self.to_axis();
        let q = m.apply(p);
        let rho = (q.x * q.x + q.y * q.y).sqrt();
        (rho / q.z).asinh()
    }

    /// Signed arclength coordinate of (the projection of) a point along the
    /// geodesic; the origin and direction are fixed by `to_axis`.
    pub fn arclength_coord(&self, p: &HyperbolicPoint) -> f64 {
        let m = self.to_axis();
        let q = m.apply(p);
        // distance along the axis is log z at the foot of the perpendicular;
        // the perpendicular from (x, y, z) hits the axis at z' = |(x,y,z)|
        (q.x * q.x + q.y * q.y + q.z * q.z).sqrt().ln()
    }

    /// A point of the geodesic at the given arclength coordinate.
    pub fn point_at(&self, s: f64) -> HyperbolicPoint {
        match self {
            Geodesic::VerticalLine { foot } => HyperbolicPoint {
                x: foot[0],
                y: foot[1],
                z: s.exp(),
            },
            Geodesic::Semicircle { e1, e2 } => {
                let cx = 0.5 * (e1[0] + e2[0]);
                let cy = 0.5 * (e1[1] + e2[1]);
                let dx = e2[0] - e1[0];
                let dy = e2[1] - e1[1];
                let l = (dx * dx + dy * dy).sqrt();
                let r = 0.5 * l;
                let (ux, uy) = (dx / l, dy / l);
                // parametrize by the arclength coordinate used above:
                // under w ↦ (w-e1)(w-e2)⁻¹ the semicircle maps to the axis
                // and the point at parameter s has z' = e^s; inverting the
                // boundary Möbius gives the chord coordinate t below.
                let zs = s.exp();
                let t = (zs * zs - 1.0) / (zs * zs + 1.0); // in (-1, 1)
                let h = (1.0 - t * t).sqrt() * r;
                HyperbolicPoint {
                    x: cx + t * r * ux,
                    y: cy + t * r * uy,
                    z: h,
                }
            }
        }
    }
}

fn geodesic_through(p: &HyperbolicPoint, q: &HyperbolicPoint) -> Geodesic {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    let hor = (dx * dx + dy * dy).sqrt();
    let scale = 1.0 + p.z.abs().max(q.z.abs());
    if hor < 1e-12 * scale {
        return Geodesic::VerticalLine { foot: [p.x, p.y] };
    }
    let (ux, uy) = (dx / hor, dy / hor);
    // in the (t, z) vertical plane: p at t=0, q at t=hor
    let t0 = (hor * hor + q.z * q.z - p.z * p.z) / (2.0 * hor);
    let r = (t0 * t0 + p.z * p.z).sqrt();
    let e1 = [p.x + (t0 - r) * ux, p.y + (t0 - r) * uy];
    let e2 = [p.x + (t0 + r) * ux, p.y + (t0 + r) * uy];
    Geodesic::Semicircle { e1, e2 }
}

fn check_points(points: &[HyperbolicPoint], tau: f64) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if distance(&points[i], &points[j]) <= tau {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(())
}

/// The geodesic through all given points, if one exists within tolerance
/// `tau` (hyperbolic point-to-geodesic distance).
pub fn common_geodesic(points: &[HyperbolicPoint], tau: f64) -> Result<Option<Geodesic>> {
    check_points(points, tau)?;
    // use the farthest pair for a well-conditioned construction
    let mut best = (0, 1);
    let mut best_d = -1.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].euclid_dist_sq(&points[j]);
            if d > best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    let g = geodesic_through(&points[best.0], &points[best.1]);
    for p in points {
        if g.distance_to(p) >= tau {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerClass {
    /// All points on one geodesic, arclength pattern symmetric about its
    /// midpoint.
    CollinearSymmetric,
    /// All points on one geodesic, no midpoint symmetry.
    CollinearAsymmetric,
    /// No common geodesic.
    NonCollinear,
}

/// Classifies the isometry stabilizer of a finite point set.
pub fn stabilizer_class(points: &[HyperbolicPoint], tau: f64) -> Result<StabilizerClass> {
    let Some(g) = common_geodesic(points, tau)? else {
        return Ok(StabilizerClass::NonCollinear);
    };
    let mut s: Vec<f64> = points.iter().map(|p| g.arclength_coord(p)).collect();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len();
    let mid = 0.5 * (s[0] + s[n - 1]);
    let symmetric = (0..n).all(|i| (s[i] + s[n - 1 - i] - 2.0 * mid).abs() < tau);
    Ok(if symmetric {
        StabilizerClass::CollinearSymmetric
    } else {
        StabilizerClass::CollinearAsymmetric
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(x: f64, y: f64, z: f64) -> HyperbolicPoint {
        HyperbolicPoint::new(x, y, z).unwrap()
    }

    #[test]
    fn identity_fixes_points() {
        let p = pt(0.3, -0.2, 1.5);
        let q = HyperbolicIsometry::identity().apply(&p);
        assert_relative_eq!(q.x, 0.3);
        assert_relative_eq!(q.y, -0.2);
        assert_relative_eq!(q.z, 1.5);
    }

    #[test]
    fn quarter_turn_about_z() {
        // quaternion-algebra oracle: e^{iθ/2} w e^{iθ/2} rotates x+yi by θ
        let iso = rotation_about_z(std::f64::consts::FRAC_PI_2);
        let q = iso.apply(&pt(1.0, 0.0, 1.0));
        assert_relative_eq!(q.x, 0.0, epsilon = 1e-14);
        assert_relative_eq!(q.y, 1.0, epsilon = 1e-14);
        assert_relative_eq!(q.z, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn w_to_minus_w_inverse() {
        // w ↦ -w⁻¹, w = 2j ⇒ -w⁻¹ = j/2 by direct quaternion inversion
        let iso = HyperbolicIsometry::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Orientation::Preserving,
        )
        .unwrap();
        let q = iso.apply(&pt(0.0, 0.0, 2.0));
        assert_relative_eq!(q.x, 0.0, epsilon = 1e-14);
        assert_relative_eq!(q.y, 0.0, epsilon = 1e-14);
        assert_relative_eq!(q.z, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn distance_examples() {
        let p = pt(0.0, 0.0, 1.0);
        assert_relative_eq!(distance(&p, &p), 0.0);
        // arccosh(1 + |p-q|²/(2 z_p z_q)) oracle gives exactly 1
        let q = pt(0.0, 0.0, std::f64::consts::E);
        assert_relative_eq!(distance(&p, &q), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hemisphere_reflection_swaps_levels_and_fixes_sphere() {
        let iso = reflection_hemisphere([0.0, 0.0], 2f64.sqrt()).unwrap();
        let q = iso.apply(&pt(0.0, 0.0, 1.0));
        assert_relative_eq!(q.z, 2.0, epsilon = 1e-13);
        let fixed = iso.apply(&pt(0.0, 0.0, 2f64.sqrt()));
        assert_relative_eq!(fixed.z, 2f64.sqrt(), epsilon = 1e-13);
        // generic hemisphere point is fixed
        let r = 2f64.sqrt();
        let p = pt(r * 0.6, r * 0.3, r * (1.0 - 0.36 - 0.09f64).sqrt());
        let q = iso.apply(&p);
        assert_relative_eq!(q.x, p.x, epsilon = 1e-13);
        assert_relative_eq!(q.y, p.y, epsilon = 1e-13);
        assert_relative_eq!(q.z, p.z, epsilon = 1e-13);
    }

    #[test]
    fn constructors_fix_their_stated_sets_pointwise() {
        // rotation: the axis, sampled
        let rot = rotation_about_z(1.1);
        for z in [0.2, 1.0, 5.0] {
            let p = pt(0.0, 0.0, z);
            let q = rot.apply(&p);
            assert!(distance(&p, &q) < 1e-13);
        }
        assert!(distance(&pt(1.0, 0.0, 1.0), &rot.apply(&pt(1.0, 0.0, 1.0))) > 0.1);
        // rotation by zero is the identity
        let id = rotation_about_z(0.0);
        let p = pt(0.7, -0.3, 2.1);
        assert!(distance(&p, &id.apply(&p)) < 1e-14);
        // plane: sampled points of {x·n = h}
        let refl = reflection_vertical_plane([3.0, 4.0], 2.0).unwrap();
        let (nx, ny, h) = (0.6, 0.8, 0.4);
        for (t, z) in [(0.0, 1.0), (1.3, 0.5), (-2.0, 3.0)] {
            let p = pt(h * nx - t * ny, h * ny + t * nx, z);
            assert!(distance(&p, &refl.apply(&p)) < 1e-12);
        }
        // hemisphere: sampled sphere points, plus off-sphere points move
        let inv = reflection_hemisphere([1.0, -0.5], 1.7).unwrap();
        for (u, v) in [(0.3, 0.4), (-0.7, 0.1), (0.0, -0.9)] {
            let z = (1.7f64.powi(2) - (1.7 * u).powi(2) - (1.7 * v).powi(2)).sqrt();
            let p = pt(1.0 + 1.7 * u, -0.5 + 1.7 * v, z);
            assert!(distance(&p, &inv.apply(&p)) < 1e-12);
        }
        assert!(distance(&pt(1.0, -0.5, 0.4), &inv.apply(&pt(1.0, -0.5, 0.4))) > 0.1);
        // degenerate inputs rejected
        assert!(reflection_hemisphere([0.0, 0.0], 0.0).is_err());
        assert!(reflection_vertical_plane([0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn vertical_plane_reflection() {
        let iso = reflection_vertical_plane([0.0, 1.0], 0.0).unwrap();
        let q = iso.apply(&pt(0.7, 0.4, 1.1));
        assert_relative_eq!(q.x, 0.7, epsilon = 1e-14);
        assert_relative_eq!(q.y, -0.4, epsilon = 1e-14);
        assert_relative_eq!(q.z, 1.1, epsilon = 1e-14);
    }

    #[test]
    fn common_geodesic_examples() {
        let tau = TAU_GEO;
        // both on the z-axis
        let g = common_geodesic(&[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 3.0)], tau)
            .unwrap()
            .unwrap();
        match g {
            Geodesic::VerticalLine { foot } => {
                assert_relative_eq!(foot[0], 0.0);
                assert_relative_eq!(foot[1], 0.0);
            }
            _ => panic!("expected vertical line"),
        }
        // oracle: the circle centered on the boundary through (0,0,1), (1,0,1)
        // has center t₀ = 1/2 and radius √(5)/2, endpoints (1 ± √5)/2
        let g = common_geodesic(&[pt(0.0, 0.0, 1.0), pt(1.0, 0.0, 1.0)], tau)
            .unwrap()
            .unwrap();
        match g {
            Geodesic::Semicircle { e1, e2 } => {
                let lo = (1.0 - 5f64.sqrt()) / 2.0;
                let hi = (1.0 + 5f64.sqrt()) / 2.0;
                let mut xs = [e1[0], e2[0]];
                xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert_relative_eq!(xs[0], lo, epsilon = 1e-12);
                assert_relative_eq!(xs[1], hi, epsilon = 1e-12);
            }
            _ => panic!("expected semicircle"),
        }
        // symmetric pair about the axis: endpoints ±√2
        let g = common_geodesic(&[pt(-1.0, 0.0, 1.0), pt(1.0, 0.0, 1.0)], tau)
            .unwrap()
            .unwrap();
        match g {
            Geodesic::Semicircle { e1, e2 } => {
                let mut xs = [e1[0], e2[0]];
                xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert_relative_eq!(xs[0], -2f64.sqrt(), epsilon = 1e-12);
                assert_relative_eq!(xs[1], 2f64.sqrt(), epsilon = 1e-12);
            }
            _ => panic!("expected semicircle"),
        }
        // third point off the geodesic
        let none = common_geodesic(
            &[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 2.0), pt(1.0, 0.0, 1.0)],
            tau,
        )
        .unwrap();
        assert!(none.is_none());
        // duplicates rejected
        assert!(common_geodesic(&[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 1.0)], tau).is_err());
    }

    #[test]
    fn stabilizer_classification() {
        let tau = TAU_GEO;
        assert_eq!(
            stabilizer_class(&[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 4.0)], tau).unwrap(),
            StabilizerClass::CollinearSymmetric
        );
        // log coordinates 0, log 2, log 8 are not midpoint-symmetric
        assert_eq!(
            stabilizer_class(
                &[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 2.0), pt(0.0, 0.0, 8.0)],
                tau
            )
            .unwrap(),
            StabilizerClass::CollinearAsymmetric
        );
        assert_eq!(
            stabilizer_class(
                &[pt(0.0, 0.0, 1.0), pt(1.0, 0.0, 1.0), pt(0.0, 1.0, 1.0)],
                tau
            )
            .unwrap(),
            StabilizerClass::NonCollinear
        );
        // 1, 2, 4 is symmetric in log coordinates
        assert_eq!(
            stabilizer_class(
                &[pt(0.0, 0.0, 1.0), pt(0.0, 0.0, 2.0), pt(0.0, 0.0, 4.0)],
                tau
            )
            .unwrap(),
            StabilizerClass::CollinearSymmetric
        );
    }

    #[test]
    fn geodesic_point_at_lies_on_geodesic() {
        let g = geodesic_through(&pt(0.3, -0.5, 0.8), &pt(1.4, 0.2, 1.9));
        for s in [-2.0, -0.5, 0.0, 1.0, 2.5] {
            let p = g.point_at(s);
            assert!(g.distance_to(&p) < 1e-10, "s = {s}");
            assert_relative_eq!(g.arclength_coord(&p), s, epsilon = 1e-9);
        }
    }
}
