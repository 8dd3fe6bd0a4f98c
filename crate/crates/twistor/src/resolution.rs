//! Small-resolution bookkeeping at the four nodes: the eight divisor cones,
//! the permutation action of candidate automorphisms, the lifting predicate
//! selecting the true automorphism group, the generators and the quotient
//! group, and the boundary-order test excluding the wrong resolutions.

use num_complex::Complex64;
use rand::Rng;
use selfdual::group::{self, GroupId};
use selfdual::sample::rng_for;

use crate::model::{
    c, classify_component, commutes_with_sigma, component_matrix, identity6, mat_inv, mat_mul,
    mat_norm, mat_projectively_equal, mat_sub, mat_transpose, mat_vec, projectively_equal,
    rank_complex, span_preserved, ComponentSpec, Mat6, PoonModel, QForm6, Vec6,
};
use crate::{Error, Result};

pub type C = Complex64;

/// Cone labels, in the fixed index order used throughout:
/// `0 = D'₁, 1 = D̄'₁, 2 = D'₂, 3 = D̄'₂, 4 = D'₃, 5 = D̄'₃, 6 = D'₄, 7 = D̄'₄`.
pub const CONE_LABELS: [&str; 8] = ["D1", "D1c", "D2", "D2c", "D3", "D3c", "D4", "D4c"];

/// Conjugate cone under the real structure.
pub fn conjugate_cone(i: usize) -> usize {
    i ^ 1
}

/// A divisor cone: two linear generators plus one quadratic generator.
#[derive(Clone, Debug)]
pub struct Cone {
    pub lin1: Vec6,
    pub lin2: Vec6,
    pub quad: QForm6,
}

fn lin_z(coef: f64, sign_i: f64) -> Vec6 {
    // coef·z₂ + sign_i·i·z₃  (sign_i = -1 gives "− i z₃")
    let mut v = [c(0.0, 0.0); 6];
    v[2] = c(coef, 0.0);
    v[3] = c(0.0, sign_i);
    v
}

fn unit(i: usize) -> Vec6 {
    let mut v = [c(0.0, 0.0); 6];
    v[i] = c(1.0, 0.0);
    v
}

fn quad_a(model: &PoonModel) -> QForm6 {
    let mut m = [[c(0.0, 0.0); 6]; 6];
    m[0][1] = c(0.5, 0.0);
    m[1][0] = c(0.5, 0.0);
    m[2][2] = c(2.0 * model.lambda - 3.0, 0.0);
    QForm6(m)
}

fn quad_b(model: &PoonModel) -> QForm6 {
    let mut m = [[c(0.0, 0.0); 6]; 6];
    m[2][2] = c(3.0 - 2.0 * model.lambda, 0.0);
    m[4][5] = c(0.5, 0.0);
    m[5][4] = c(0.5, 0.0);
    QForm6(m)
}

/// The eight cones for the given model.
pub fn cones(model: &PoonModel) -> [Cone; 8] {
    let (a, b) = (model.alpha, model.beta);
    let qa = quad_a(model);
    let qb = quad_b(model);
    [
        Cone {
            lin1: lin_z(a, -1.0),
            lin2: unit(4),
            quad: qa.clone(),
        }, // D'₁
        Cone {
            lin1: lin_z(a, -1.0),
            lin2: unit(5),
            quad: qa.clone(),
        }, // D̄'₁
        Cone {
            lin1: lin_z(a, 1.0),
            lin2: unit(4),
            quad: qa.clone(),
        }, // D'₂
        Cone {
            lin1: lin_z(a, 1.0),
            lin2: unit(5),
            quad: qa,
        }, // D̄'₂
        Cone {
            lin1: lin_z(b, -1.0),
            lin2: unit(0),
            quad: qb.clone(),
        }, // D'₃
        Cone {
            lin1: lin_z(b, -1.0),
            lin2: unit(1),
            quad: qb.clone(),
        }, // D̄'₃
        Cone {
            lin1: lin_z(b, 1.0),
            lin2: unit(0),
            quad: qb.clone(),
        }, // D'₄
        Cone {
            lin1: lin_z(b, 1.0),
            lin2: unit(1),
            quad: qb,
        }, // D̄'₄
    ]
}

/// Sample points of cone `j`, exactly on the variety.
pub fn cone_points(model: &PoonModel, j: usize, params: &[(f64, f64, f64)]) -> Vec<Vec6> {
    let (a, b, lam) = (model.alpha, model.beta, model.lambda);
    params
        .iter()
        .map(|&(s, p, u)| {
            let mut v = [c(0.0, 0.0); 6];
            // z₃ = ∓ i·(α or β)·z₂ according to the first linear form
            let (coef, sign) = match j {
                0 | 1 => (a, -1.0),
                2 | 3 => (a, 1.0),
                4 | 5 => (b, -1.0),
                _ => (b, 1.0),
            };
            v[2] = c(s, 0.0);
            v[3] = c(0.0, sign * coef * s);
            match j {
                0 | 2 => {
                    // w₄ = 0; Q_a: w₀w₁ = -(2λ-3) z₂²
                    v[0] = c(p, 0.0);
                    v[1] = c(-(2.0 * lam - 3.0) * s * s / p, 0.0);
                    v[5] = c(u, 0.0);
                }
                1 | 3 => {
                    v[0] = c(p, 0.0);
                    v[1] = c(-(2.0 * lam - 3.0) * s * s / p, 0.0);
                    v[4] = c(u, 0.0);
                }
                4 | 6 => {
                    // w₀ = 0; Q_b: w₄w₅ = -(3-2λ) z₂²
                    v[4] = c(p, 0.0);
                    v[5] = c(-(3.0 - 2.0 * lam) * s * s / p, 0.0);
                    v[1] = c(u, 0.0);
                }
                _ => {
                    v[4] = c(p, 0.0);
                    v[5] = c(-(3.0 - 2.0 * lam) * s * s / p, 0.0);
                    v[0] = c(u, 0.0);
                }
            }
            v
        })
        .collect()
}

fn lin_eval(l: &Vec6, v: &Vec6) -> C {
    let mut s = c(0.0, 0.0);
    for i in 0..6 {
        s += l[i] * v[i];
    }
    s
}

/// Whether all given points satisfy the cone's generators.
fn cone_contains_points(cone: &Cone, pts: &[Vec6], tol: f64) -> bool {
    pts.iter().all(|v| {
        let scale = v.iter().map(|e| e.norm()).fold(0.0, f64::max).max(1.0);
        lin_eval(&cone.lin1, v).norm() <= tol * scale
            && lin_eval(&cone.lin2, v).norm() <= tol * scale
            && cone.quad.eval(v).norm() <= tol * scale * scale
    })
}

// ---------------------------------------------------------------------------
// divisor action
// ---------------------------------------------------------------------------

/// Permutation of the eight cones under an automorphism candidate:
/// `perm[j] = k` means `U(Dⱼ) = D_k`.
pub fn divisor_action(u: &Mat6, model: &PoonModel, tol: f64) -> Result<[usize; 8]> {
    let cs = cones(model);
    let ut = mat_transpose(u);
    let mut perm = [usize::MAX; 8];
    for j in 0..8 {
        let mut found = None;
        for (k, ck) in cs.iter().enumerate() {
            // U(Dⱼ) = D_k ⟺ span{Uᵀ l : l ∈ lins(D_k)} = span{lins(Dⱼ)}
            let rows = vec![
                mat_vec(&ut, &ck.lin1).to_vec(),
                mat_vec(&ut, &ck.lin2).to_vec(),
                cs[j].lin1.to_vec(),
                cs[j].lin2.to_vec(),
            ];
            if rank_complex(&rows, tol) == 2 {
                found = Some(k);
                break;
            }
        }
        let Some(k) = found else {
            return Err(Error::NotAnAutomorphism(format!(
                "image of cone {} matches no catalogued cone",
                CONE_LABELS[j]
            )));
        };
        // verify with sampled points
        let pts: Vec<Vec6> = cone_points(
            model,
            j,
            &[(0.4, 1.0, 0.7), (1.3, -0.8, 0.2), (-0.6, 0.5, -1.1)],
        )
        .iter()
        .map(|p| mat_vec(u, p))
        .collect();
        if !cone_contains_points(&cs[k], &pts, tol.sqrt()) {
            return Err(Error::NotAnAutomorphism(format!(
                "image of cone {} fails the generators of {}",
                CONE_LABELS[j], CONE_LABELS[k]
            )));
        }
        perm[j] = k;
    }
    let mut seen = [false; 8];
    for &k in &perm {
        if seen[k] {
            return Err(Error::NotAnAutomorphism(
                "cone permutation not bijective".into(),
            ));
        }
        seen[k] = true;
    }
    Ok(perm)
}

/// Node indices `0 = P₁, 1 = P̄₁, 2 = P₃, 3 = P̄₃` and the node permutation.
pub fn node_action(u: &Mat6, model: &PoonModel, tol: f64) -> Result<[usize; 4]> {
    let nodes = model.singular_points();
    let mut perm = [usize::MAX; 4];
    for (i, n) in nodes.iter().enumerate() {
        let img = mat_vec(u, n);
        let Some(k) = nodes.iter().position(|q| projectively_equal(&img, q, tol)) else {
            return Err(Error::NotAnAutomorphism(format!(
                "node {i} is not mapped to a node"
            )));
        };
        perm[i] = k;
    }
    Ok(perm)
}

// ---------------------------------------------------------------------------
// small resolutions
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionFamily {
    /// The two resolutions that realize the twistor space.
    Star,
    /// The two excluded resolutions.
    StarPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallResolution {
    pub family: ResolutionFamily,
    pub variant: u8,
}

impl SmallResolution {
    pub fn all() -> [SmallResolution; 4] {
        [
            SmallResolution {
                family: ResolutionFamily::Star,
                variant: 1,
            },
            SmallResolution {
                family: ResolutionFamily::Star,
                variant: 2,
            },
            SmallResolution {
                family: ResolutionFamily::StarPrime,
                variant: 1,
            },
            SmallResolution {
                family: ResolutionFamily::StarPrime,
                variant: 2,
            },
        ]
    }

    /// The blown-up pair of cones at each node (`0 = P₁, 1 = P̄₁, 2 = P₃,
    /// 3 = P̄₃`). Pairs at conjugate nodes are the σ-images of each other.
    pub fn pair_at(&self, node: usize) -> [usize; 2] {
        // pairs at P₁: {D'₁, D̄'₂} = [0, 3] or the complement [1, 2];
        // pairs at P₃: {D'₃, D̄'₄} = [4, 7] or the complement [5, 6]
        let first_at_p1 = self.variant == 1;
        let first_at_p3 = match self.family {
            ResolutionFamily::Star => first_at_p1,
            ResolutionFamily::StarPrime => !first_at_p1,
        };
        let p1 = if first_at_p1 { [0, 3] } else { [1, 2] };
        let p1c = [conjugate_cone(p1[0]), conjugate_cone(p1[1])];
        let p3 = if first_at_p3 { [4, 7] } else { [5, 6] };
        let p3c = [conjugate_cone(p3[0]), conjugate_cone(p3[1])];
        match node {
            0 => p1,
            1 => p1c,
            2 => p3,
            _ => p3c,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LiftVerdict {
    pub lifts: bool,
    /// "fixed-node" when every node pair is preserved node-by-node,
    /// "swapped-node" when conjugate nodes are exchanged.
    pub rule: &'static str,
    /// Per node: (image node, image of the blow-up pair, required pair).
    pub detail: Vec<(usize, [usize; 2], [usize; 2])>,
}

/// Whether an automorphism of the model lifts to the small resolution: it
/// must carry the blow-up pair at each node to the blow-up pair at the image
/// node.
pub fn lift_predicate(
    u: &Mat6,
    res: SmallResolution,
    model: &PoonModel,
    tol: f64,
) -> Result<LiftVerdict> {
    let dperm = divisor_action(u, model, tol)?;
    let nperm = node_action(u, model, tol)?;
    let mut lifts = true;
    let mut detail = Vec::with_capacity(4);
    for node in 0..4 {
        let pair = res.pair_at(node);
        let image = [dperm[pair[0]], dperm[pair[1]]];
        let required = res.pair_at(nperm[node]);
        let ok = (image[0] == required[0] && image[1] == required[1])
            || (image[0] == required[1] && image[1] == required[0]);
        lifts &= ok;
        detail.push((nperm[node], image, required));
    }
    let rule = if nperm[0] == 0 && nperm[2] == 2 {
        "fixed-node"
    } else {
        "swapped-node"
    };
    Ok(LiftVerdict {
        lifts,
        rule,
        detail,
    })
}

/// The lifting verdict predicted by the classification, per component.
pub fn expected_lifting(spec: ComponentSpec) -> bool {
    spec.a22_alt == (spec.a_off != spec.b_off)
}

/// Runs the lifting census over all sixteen components.
pub fn enumerate_components(
    model: &PoonModel,
    res: SmallResolution,
    seed: u64,
) -> Result<Vec<(ComponentSpec, LiftVerdict)>> {
    let mut rng = rng_for(seed, "component-census");
    let mut out = Vec::with_capacity(16);
    for spec in ComponentSpec::all() {
        let u = component_matrix(
            model,
            spec,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        if !span_preserved(&u, model, 1e-9) || !commutes_with_sigma(&u, 1e-9) {
            return Err(Error::NotAnAutomorphism(format!(
                "component representative {} fails the model predicates",
                spec.label()
            )));
        }
        let verdict = lift_predicate(&u, res, model, 1e-9)?;
        out.push((spec, verdict));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// generators and the quotient group
// ---------------------------------------------------------------------------

/// The three generator matrices `Λ₁, Λ₂, Λ`.
pub fn generators(model: &PoonModel) -> (Mat6, Mat6, Mat6) {
    let mut l1 = identity6();
    l1[3][3] = c(-1.0, 0.0);
    l1[4][4] = c(0.0, 0.0);
    l1[5][5] = c(0.0, 0.0);
    l1[4][5] = c(1.0, 0.0);
    l1[5][4] = c(1.0, 0.0);

    let mut l2 = identity6();
    l2[0][0] = c(0.0, 0.0);
    l2[1][1] = c(0.0, 0.0);
    l2[0][1] = c(1.0, 0.0);
    l2[1][0] = c(1.0, 0.0);
    l2[3][3] = c(-1.0, 0.0);

    let (a, b) = (model.alpha, model.beta);
    let mut l = [[c(0.0, 0.0); 6]; 6];
    l[0][4] = c(b, 0.0);
    l[1][5] = c(-b, 0.0);
    l[2][3] = c(0.0, -1.0);
    l[3][2] = c(0.0, a * b);
    l[4][0] = c(a, 0.0);
    l[5][1] = c(-a, 0.0);

    (l1, l2, l)
}

/// Residuals of the generator identities `Λ₁² = Λ₂² = I` and `Λ² = αβ I`.
pub fn generator_identities(model: &PoonModel) -> (f64, f64, f64) {
    let (l1, l2, l) = generators(model);
    let i6 = identity6();
    let r1 = mat_norm(&mat_sub(&mat_mul(&l1, &l1), &i6));
    let r2 = mat_norm(&mat_sub(&mat_mul(&l2, &l2), &i6));
    let ab = model.alpha * model.beta;
    let mut abi = i6;
    for (k, row) in abi.iter_mut().enumerate() {
        row[k] = c(ab, 0.0);
    }
    let r3 = mat_norm(&mat_sub(&mat_mul(&l, &l), &abi));
    (r1, r2, r3)
}

/// Builds the component composition table over the eight lifting components
/// and identifies the quotient group and its index-two subgroup of
/// node-preserving components.
pub fn quotient_group(
    model: &PoonModel,
    seed: u64,
) -> Result<(GroupId, GroupId, Vec<ComponentSpec>)> {
    let lifting: Vec<ComponentSpec> = ComponentSpec::all()
        .into_iter()
        .filter(|s| expected_lifting(*s))
        .collect();
    debug_assert_eq!(lifting.len(), 8);
    let mut rng = rng_for(seed, "quotient-group");
    let reps: Vec<Mat6> = lifting
        .iter()
        .map(|&s| component_matrix(model, s, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
        .collect();
    let n = lifting.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = mat_mul(&reps[i], &reps[j]);
            let spec = classify_component(&prod, model, 1e-9)?;
            let Some(k) = lifting.iter().position(|&s| s == spec) else {
                return Err(Error::NotAnAutomorphism(format!(
                    "product of lifting components {} · {} lands outside the lifting set ({})",
                    lifting[i].label(),
                    lifting[j].label(),
                    spec.label()
                )));
            };
            table[i][j] = k;
        }
    }
    let full = group::identify(&table).map_err(Error::Core)?;
    // H = the four node-preserving (case I) components
    let h_idx: Vec<usize> = (0..n).filter(|&i| !lifting[i].case_ii).collect();
    let mut h_table = vec![vec![0usize; 4]; 4];
    for (a, &i) in h_idx.iter().enumerate() {
        for (bb, &j) in h_idx.iter().enumerate() {
            let k = table[i][j];
            let Some(pos) = h_idx.iter().position(|&x| x == k) else {
                return Err(Error::NotAnAutomorphism("H is not closed".into()));
            };
            h_table[a][bb] = pos;
        }
    }
    let h = group::identify(&h_table).map_err(Error::Core)?;
    Ok((full, h, lifting))
}

// ---------------------------------------------------------------------------
// ordering check (boundary configuration of the invariant lines)
// ---------------------------------------------------------------------------

/// Two chords `{p₁}` and `{p₂}` on the circle through the real line
/// interleave iff exactly one endpoint of one lies inside the other's
/// interval.
pub fn pairs_interleave(p1: (f64, f64), p2: (f64, f64)) -> bool {
    let (a, b) = (p1.0.min(p1.1), p1.0.max(p1.1));
    let inside = |x: f64| x > a && x < b;
    inside(p2.0) != inside(p2.1)
}

#[derive(Clone, Debug)]
pub struct OrderingReport {
    /// Boundary values in the cyclic order derived from the resolution.
    pub sequence: [f64; 4],
    /// The arc-connected pairs cross.
    pub chords_cross: bool,
    /// The derived cyclic order matches the numeric circular order up to
    /// rotation and reflection.
    pub dihedral_match: bool,
    /// The overall verdict: the resolution is realizable as a twistor space
    /// boundary configuration.
    pub realizable: bool,
}

/// L-curve index (0..4 for L₁..L₄) attached at the junction of the
/// exceptional curve of `node` with the C-curve `cidx`, for the given
/// resolution. Derived from the containment structure: the non-blown cone
/// through the node containing the C-germ also contains exactly one L-germ.
fn junction_l(
    model: &PoonModel,
    res: SmallResolution,
    node: usize,
    c_pts: &[Vec<Vec6>; 4],
    l_pts: &[Vec<Vec6>; 4],
    node_cones: &[Vec<usize>; 4],
    c_nodes: &[[usize; 2]; 4],
    cidx: usize,
) -> Result<usize> {
    let cs = cones(model);
    let blown = res.pair_at(node);
    let tol = 1e-9;
    let l_at_node: [usize; 2] = if node < 2 { [0, 1] } else { [2, 3] };
    // the C-germ must pass through the node
    if !c_nodes[cidx].contains(&node) {
        return Err(Error::Numerical(
            "C-curve does not pass through node".into(),
        ));
    }
    let mut joined = None;
    for &cone_idx in &node_cones[node] {
        if blown.contains(&cone_idx) {
            continue;
        }
        if !cone_contains_points(&cs[cone_idx], &c_pts[cidx], tol) {
            continue;
        }
        for &l in &l_at_node {
            if cone_contains_points(&cs[cone_idx], &l_pts[l], tol) {
                if joined.replace(l).is_some() {
                    return Err(Error::Numerical("ambiguous junction assignment".into()));
                }
            }
        }
    }
    joined.ok_or_else(|| Error::Numerical("no junction assignment found".into()))
}

/// Derives the cyclic boundary order of the four invariant-line images for a
/// resolution and tests its realizability against the numeric positions
/// `L₁ ↦ -α, L₂ ↦ α, L₃ ↦ -β, L₄ ↦ β`.
pub fn ordering_check(model: &PoonModel, res: SmallResolution) -> Result<OrderingReport> {
    // C-curves as coordinate lines through node pairs:
    // C₂ = ⟨P₁, P₃⟩, C₄ = ⟨P̄₁, P₃⟩, C̄₂ = ⟨P̄₁, P̄₃⟩, C̄₄ = ⟨P₁, P̄₃⟩
    let nodes = model.singular_points();
    let c_nodes: [[usize; 2]; 4] = [[0, 2], [1, 2], [1, 3], [0, 3]];
    let mix = |a: &Vec6, b: &Vec6, t: f64| -> Vec6 {
        let mut v = [c(0.0, 0.0); 6];
        for i in 0..6 {
            v[i] = a[i] * (1.0 - t) + b[i] * t;
        }
        v
    };
    let c_pts: [Vec<Vec6>; 4] = std::array::from_fn(|i| {
        let [n1, n2] = c_nodes[i];
        vec![
            mix(&nodes[n1], &nodes[n2], 0.3),
            mix(&nodes[n1], &nodes[n2], 0.7),
        ]
    });
    // L-curves sampled from their exact parametrization (z₃ = ∓i(α|β)z₂)
    let l_pts: [Vec<Vec6>; 4] = std::array::from_fn(|j| {
        let (coef, sign) = match j {
            0 => (model.alpha, -1.0),
            1 => (model.alpha, 1.0),
            2 => (model.beta, -1.0),
            _ => (model.beta, 1.0),
        };
        [0.6f64, -1.2]
            .iter()
            .map(|&s| {
                let mut v = [c(0.0, 0.0); 6];
                v[2] = c(s, 0.0);
                v[3] = c(0.0, sign * coef * s);
                if j < 2 {
                    v[0] = c(1.0, 0.0);
                    v[1] = c(-(2.0 * model.lambda - 3.0) * s * s, 0.0);
                } else {
                    v[4] = c(1.0, 0.0);
                    v[5] = c(-(3.0 - 2.0 * model.lambda) * s * s, 0.0);
                }
                v
            })
            .collect()
    });
    // cones through each node
    let cs = cones(model);
    let node_cones: [Vec<usize>; 4] = std::array::from_fn(|n| {
        (0..8)
            .filter(|&j| cone_contains_points(&cs[j], std::slice::from_ref(&nodes[n]), 1e-12))
            .collect()
    });
    // quotient circle: E(P₁) — C₂ — E(P₃) — C₄ — (σ-glued back to E(P₁));
    // slots: (E(P₁), C₂) at P₁, (C₂, E(P₃)) at P₃, (E(P₃), C₄) at P₃,
    // (C₄, E(P̄₁)) at P̄₁.
    let s1 = junction_l(model, res, 0, &c_pts, &l_pts, &node_cones, &c_nodes, 0)?;
    let s2 = junction_l(model, res, 2, &c_pts, &l_pts, &node_cones, &c_nodes, 0)?;
    let s3 = junction_l(model, res, 2, &c_pts, &l_pts, &node_cones, &c_nodes, 1)?;
    let s4 = junction_l(model, res, 1, &c_pts, &l_pts, &node_cones, &c_nodes, 1)?;
    let value = |l: usize| match l {
        0 => -model.alpha,
        1 => model.alpha,
        2 => -model.beta,
        _ => model.beta,
    };
    let seq = [value(s1), value(s2), value(s3), value(s4)];
    let cross_a = pairs_interleave((seq[0], seq[1]), (seq[2], seq[3]));
    let cross_b = pairs_interleave((seq[1], seq[2]), (seq[3], seq[0]));
    let chords_cross = cross_a || cross_b;
    // dihedral comparison against the sorted circular order
    let mut sorted = seq;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut dihedral_match = false;
    for rot in 0..4 {
        let fwd: Vec<f64> = (0..4).map(|i| seq[(i + rot) % 4]).collect();
        let bwd: Vec<f64> = (0..4).map(|i| seq[(rot + 4 - i) % 4]).collect();
        if fwd == sorted.to_vec() || bwd == sorted.to_vec() {
            dihedral_match = true;
        }
    }
    Ok(OrderingReport {
        sequence: seq,
        chords_cross,
        dihedral_match,
        realizable: !chords_cross && dihedral_match,
    })
}

// ---------------------------------------------------------------------------
// the B/C conjugation relations
// ---------------------------------------------------------------------------

fn b_matrix(s: C) -> Mat6 {
    let mut m = identity6();
    m[0][0] = s;
    m[1][1] = s.inv();
    m
}

fn c_matrix(t: C) -> Mat6 {
    let mut m = identity6();
    m[4][4] = t;
    m[5][5] = t.inv();
    m
}

/// Case-II matrix `U(a, b)` of diagonal type with `A₂₂ = A₂₂⁻`.
fn u_ab(model: &PoonModel, a: C, b: C) -> Mat6 {
    let mut m = [[c(0.0, 0.0); 6]; 6];
    m[0][4] = a;
    m[1][5] = -a.conj();
    m[2][3] = c(0.0, -1.0);
    m[3][2] = c(0.0, model.alpha * model.beta);
    m[4][0] = b;
    m[5][1] = -b.conj();
    m
}

#[derive(Clone, Debug)]
pub struct BcReport {
    /// Residuals of the four product identities.
    pub identity_residuals: [f64; 4],
    /// Residual of `U B(s) U⁻¹ = C(s)`.
    pub conjugation_residual: f64,
}

/// Verifies the torus conjugation structure of the node-swapping components:
/// `B(s)U(a,b) = U(sa,b)`, `U(a,b)B(s) = U(a,sb)`, `C(t)U(a,b) = U(a,tb)`,
/// `U(a,b)C(t) = U(ta,b)`, and hence `U G₁ U⁻¹ = G₃`.
pub fn bc_conjugation_check(model: &PoonModel, seed: u64) -> Result<BcReport> {
    let mut rng = rng_for(seed, "bc-conjugation");
    let a = C::from_polar(model.beta, rng.gen_range(-3.0..3.0));
    let b = C::from_polar(model.alpha, rng.gen_range(-3.0..3.0));
    let s = C::from_polar(1.0, rng.gen_range(-3.0..3.0));
    let t = C::from_polar(1.0, rng.gen_range(-3.0..3.0));
    let u = u_ab(model, a, b);
    let rel = |lhs: Mat6, rhs: Mat6| -> f64 { mat_norm(&mat_sub(&lhs, &rhs)) / mat_norm(&rhs) };
    let res = [
        rel(mat_mul(&b_matrix(s), &u), u_ab(model, s * a, b)),
        rel(mat_mul(&u, &b_matrix(s)), u_ab(model, a, s * b)),
        rel(mat_mul(&c_matrix(t), &u), u_ab(model, a, t * b)),
        rel(mat_mul(&u, &c_matrix(t)), u_ab(model, t * a, b)),
    ];
    // conjugation swaps the two C*-subgroups
    let uinv = mat_inv(&u)?;
    let conj = mat_mul(&u, &mat_mul(&b_matrix(s), &uinv));
    let conj_res = if mat_projectively_equal(&conj, &c_matrix(s), 1e-10) {
        0.0
    } else {
        mat_norm(&mat_sub(&conj, &c_matrix(s)))
    };
    Ok(BcReport {
        identity_residuals: res,
        conjugation_residual: conj_res,
    })
}

/// `Λ·U` for `U` in a case-I component is again of one of the sixteen shapes
/// (used to relate the two cases through products).
pub fn lambda_times_h_is_case_ii(model: &PoonModel, seed: u64) -> Result<bool> {
    let (_, _, l) = generators(model);
    let mut rng = rng_for(seed, "lambda-products");
    for spec in ComponentSpec::all().into_iter().filter(|s| !s.case_ii) {
        let u = component_matrix(
            model,
            spec,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let p1 = mat_mul(&l, &u);
        let p2 = mat_mul(&u, &l);
        if !classify_component(&p1, model, 1e-9)?.case_ii
            || !classify_component(&p2, model, 1e-9)?.case_ii
        {
            return Ok(false);
        }
    }
    Ok(true)
}
