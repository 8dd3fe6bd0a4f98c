//! The named verification suites. Each runs a bundle of checks against the
//! configured monopole set and modulus and reports residuals and witnesses.

use serde::Serialize;

use num_complex::Complex64;
use selfdual::dual::Scalar;
use selfdual::group::GroupId;
use selfdual::lift::{
    extra_involution, group_table, involution_generators, lift_rotation_family, map_distance,
    sample_chart_points, verify_conformal, BundleMap,
};
use selfdual::metric::{curvature_at, curvature_at_fd, curvature_report, MetricField};
use selfdual::monopole::{
    chart_connection, curvature_identity_residual, f_total, transition, wrap_angle, ChartId,
    ChartPoint, MonopoleConfig,
};
use selfdual::sample::{halton_grid, rng_for};
use selfdual_twistor::ew::{
    angular_shift_check, ew_admissible, ew_involutions, ew_monopole_images, lambda_dual_action,
    real_point_search, EwSide,
};
use selfdual_twistor::exact;
use selfdual_twistor::model::{
    build_poon_model, commutes_with_sigma, component_matrix, span_preserved, ComponentSpec,
    PoonModel,
};
use selfdual_twistor::resolution::{
    bc_conjugation_check, enumerate_components, expected_lifting, generator_identities,
    lambda_times_h_is_case_ii, ordering_check, quotient_group, ResolutionFamily, SmallResolution,
};
use selfdual_twistor::semifree::semifree_circle_subgroups;

use crate::config::{Config, Suite};

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub check: String,
    pub residual: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub max_residual: f64,
    pub checks_run: usize,
    pub witnesses: Vec<Witness>,
}

struct Recorder {
    max_residual: f64,
    checks: usize,
    witnesses: Vec<Witness>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            max_residual: 0.0,
            checks: 0,
            witnesses: Vec::new(),
        }
    }

    /// Record a residual-style check: passes iff `residual < tol`.
    fn check(&mut self, name: &str, residual: f64, tol: f64, detail: &str) {
        self.checks += 1;
        if residual.is_finite() {
            self.max_residual = self.max_residual.max(residual);
        }
        if !(residual < tol) {
            self.witnesses.push(Witness {
                check: name.to_string(),
                residual,
                detail: format!("residual {residual:.3e} >= tolerance {tol:.3e}; {detail}"),
            });
        }
    }

    fn expect(&mut self, name: &str, ok: bool, detail: &str) {
        self.checks += 1;
        if !ok {
            self.witnesses.push(Witness {
                check: name.to_string(),
                residual: f64::NAN,
                detail: detail.to_string(),
            });
        }
    }

    fn finish(self, name: &str) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            pass: self.witnesses.is_empty(),
            max_residual: self.max_residual,
            checks_run: self.checks,
            witnesses: self.witnesses,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &Config, exact_mode: bool) -> SuiteResult {
    let mut rec = Recorder::new();
    let outcome = match suite {
        Suite::ConnectionIdentity => connection_identity(cfg, &mut rec),
        Suite::Curvature => curvature(cfg, &mut rec),
        Suite::Conformality => conformality(cfg, &mut rec),
        Suite::InvolutionGroup => involution_group(cfg, &mut rec),
        Suite::TwistorClassification => twistor_classification(cfg, &mut rec, exact_mode),
        Suite::ResolutionLift => resolution_lift(cfg, &mut rec),
        Suite::EinsteinWeyl => einstein_weyl(cfg, &mut rec),
    };
    if let Err(e) = outcome {
        rec.witnesses.push(Witness {
            check: format!("{suite}: execution"),
            residual: f64::NAN,
            detail: e,
        });
    }
    rec.finish(suite.name())
}

type SuiteOutcome = Result<(), String>;

fn toric(cfg: &Config) -> Result<&MonopoleConfig, String> {
    if cfg.monopoles.is_toric() {
        Ok(&cfg.monopoles)
    } else {
        Err("this suite requires a collinear (toric) configuration".into())
    }
}

fn model_for(cfg: &Config) -> Result<PoonModel, String> {
    let lambda = cfg.lambda.ok_or("twistor.lambda missing")?;
    build_poon_model(lambda).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------

fn connection_identity(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    let mono = toric(cfg)?;
    let samples = halton_grid(1000, 0.1, 5.0);
    let rep = curvature_identity_residual(mono, &samples, 1e-4).map_err(|e| e.to_string())?;
    rec.check(
        "connection identity (dual derivatives)",
        rep.max_dual,
        1e-9,
        &format!("worst sample {:?}", rep.worst),
    );
    rec.check(
        "connection identity (finite differences)",
        rep.max_fd,
        1e-4,
        "independent oracle",
    );

    // axis table: the chart coefficient vanishes on its own interval
    let heights = mono.heights().map_err(|e| e.to_string())?.to_vec();
    let mut worst_axis: f64 = 0.0;
    for chart in mono.charts() {
        let (lo, hi) = mono.chart_interval(chart).map_err(|e| e.to_string())?;
        let hi = if hi.is_infinite() {
            lo.max(1.0) * 4.0
        } else {
            hi
        };
        let n = 100 / mono.num_charts() + 1;
        for i in 1..=n {
            let z = lo + (hi - lo) * i as f64 / (n as f64 + 1.0);
            let v = chart_connection(mono, chart, 0.0, z).map_err(|e| e.to_string())?;
            worst_axis = worst_axis.max(v.abs());
            // f(0, z) itself must equal the negated chart constant exactly
            let f = f_total(&heights, 0.0, z);
            let k = mono.chart_constant(chart).map_err(|e| e.to_string())?;
            worst_axis = worst_axis.max((f + k).abs());
        }
    }
    rec.check(
        "axis values of the connection potential",
        worst_axis,
        1e-12,
        "piecewise table",
    );

    // transition cocycle and the fixed-set pattern of the rotation lifts
    let th = std::f64::consts::FRAC_PI_3;
    let t12 = transition(mono, ChartId(1), ChartId(2), th).map_err(|e| e.to_string())?;
    let t21 = transition(mono, ChartId(2), ChartId(1), th).map_err(|e| e.to_string())?;
    rec.check(
        "transition inverse g₂₁g₁₂ = 1",
        (t12 + t21).abs(),
        1e-14,
        "",
    );
    rec.check("transition g₂₁ = e^{iθ₃}", (t12 - th).abs(), 1e-14, "");
    let mut cocycle: f64 = 0.0;
    for a in mono.charts() {
        for b in mono.charts() {
            for c in mono.charts() {
                let tab = transition(mono, a, b, th).unwrap();
                let tbc = transition(mono, b, c, th).unwrap();
                let tac = transition(mono, a, c, th).unwrap();
                cocycle = cocycle.max((tab + tbc - tac).abs());
            }
        }
    }
    rec.check("cocycle over triple overlaps", cocycle, 1e-13, "");

    for k in [-1i64, 0, 1] {
        let fam = lift_rotation_family(mono, k).map_err(|e| e.to_string())?;
        let map = fam.at(mono, 0.9).map_err(|e| e.to_string())?;
        for chart in mono.charts() {
            let z = mono.interval_midpoint(chart).map_err(|e| e.to_string())?;
            let p = ChartPoint::new(mono, chart, 0.0, 0.0, z, 0.3).map_err(|e| e.to_string())?;
            let q = map.apply(mono, &p).map_err(|e| e.to_string())?;
            let shift = wrap_angle(q.theta1 - p.theta1);
            let expected = wrap_angle(fam.fiber_speed(chart.0) as f64 * 0.9);
            rec.check(
                &format!("rotation lift k={k} fiber speed on I_{}", chart.0),
                (shift - expected).abs(),
                1e-12,
                "fixed-set pattern",
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

struct FlatField;
impl MetricField for FlatField {
    fn components<S: Scalar>(&self, _x: &[S; 4]) -> [[S; 4]; 4] {
        let mut g = [[S::from_f64(0.0); 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = S::from_f64(1.0);
        }
        g
    }
}

struct SphereField;
impl MetricField for SphereField {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let one = S::from_f64(1.0);
        let n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let c = S::from_f64(4.0) / ((one + n2) * (one + n2));
        let mut g = [[S::from_f64(0.0); 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = c;
        }
        g
    }
}

fn interior_points(mono: &MonopoleConfig, count: usize, seed: u64) -> Vec<ChartPoint> {
    sample_chart_points(
        mono,
        count,
        seed,
        "curvature-points",
        (0.3, 2.8),
        (0.35, 3.5),
    )
}

fn curvature(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    let mono = toric(cfg)?;
    // engine sanity
    let flat = curvature_at(&FlatField, [0.2, -0.4, 1.1, 0.7]).map_err(|e| e.to_string())?;
    rec.check("engine: flat space scalar", flat.scalar.abs(), 1e-15, "");
    rec.check("engine: flat space Riemann", flat.riemann_norm, 1e-15, "");
    let sph = curvature_at(&SphereField, [0.3, -0.1, 0.2, 0.4]).map_err(|e| e.to_string())?;
    rec.check(
        "engine: round sphere scalar - 12",
        (sph.scalar - 12.0).abs(),
        1e-8,
        "",
    );
    rec.check("engine: round sphere |W+|", sph.weyl_sd_norm, 1e-10, "");
    rec.check("engine: round sphere |W-|", sph.weyl_asd_norm, 1e-10, "");

    // scalar flatness and the Weyl half on the configured metric
    let pts = interior_points(mono, cfg.samples.min(100).max(20), cfg.seed);
    let mut max_s: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    let mut max_bianchi: f64 = 0.0;
    let mut max_cross: f64 = 0.0;
    let mut side: Option<bool> = None;
    let mut side_consistent = true;
    for p in &pts {
        let rep = curvature_report(mono, p).map_err(|e| e.to_string())?;
        max_s = max_s.max(rep.scalar.abs());
        max_ratio = max_ratio.max(rep.weyl_ratio());
        max_bianchi = max_bianchi.max(rep.bianchi_residual);
        max_cross = max_cross.max(rep.weyl_cross_norm / rep.riemann_norm.max(1e-30));
        match side {
            None => side = Some(rep.sd_half_vanishes()),
            Some(s) => side_consistent &= s == rep.sd_half_vanishes(),
        }
    }
    rec.check(
        "scalar curvature",
        max_s,
        cfg.tol_curv,
        &format!("{} points", pts.len()),
    );
    rec.check("Weyl half-vanishing ratio", max_ratio, 1e-5, "");
    rec.check("first Bianchi identity", max_bianchi, 1e-8, "");
    rec.check(
        "Weyl operator preserves the two-form halves",
        max_cross,
        1e-10,
        "",
    );
    rec.expect(
        "the same Weyl half vanishes at every sample",
        side_consistent,
        "inconsistent vanishing side",
    );

    // cross-validation of the two differentiation pipelines
    let field = selfdual::metric::LebrunCylindrical {
        heights: mono.heights().map_err(|e| e.to_string())?.to_vec(),
        k: mono.chart_constant(ChartId(2)).map_err(|e| e.to_string())?,
    };
    for p in pts.iter().take(5) {
        let x = p.coords();
        let a = curvature_at(&field, x).map_err(|e| e.to_string())?;
        let b = curvature_at_fd(&field, x, 1e-4 * (1.0 + x[0].abs() + x[2].abs()))
            .map_err(|e| e.to_string())?;
        rec.check(
            "AD/FD scalar agreement",
            (a.scalar - b.scalar).abs(),
            1e-4,
            "independent pipelines",
        );
        rec.check(
            "AD/FD Riemann-norm agreement",
            (a.riemann_norm - b.riemann_norm).abs() / a.riemann_norm.max(1e-30),
            1e-5,
            "",
        );
        rec.check(
            "AD/FD Weyl-half agreement",
            ((a.weyl_sd_norm - b.weyl_sd_norm).abs() + (a.weyl_asd_norm - b.weyl_asd_norm).abs())
                / a.riemann_norm.max(1e-30),
            1e-5,
            "",
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn conformality(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    let mono = toric(cfg)?;
    let pts = sample_chart_points(
        mono,
        cfg.samples.max(50),
        cfg.seed,
        "conformality",
        (0.25, 2.6),
        (0.3, 3.4),
    );

    // lifted rotations
    for (k, th) in [(0i64, 0.8), (1, -1.3)] {
        let map = lift_rotation_family(mono, k)
            .and_then(|f| f.at(mono, th))
            .map_err(|e| e.to_string())?;
        let rep = verify_conformal(mono, &map, &pts, true).map_err(|e| e.to_string())?;
        rec.check(
            &format!("rotation lift k={k} conformality"),
            rep.max_deviation,
            1e-8,
            &format!("{} samples", rep.samples_used),
        );
        rec.check(
            &format!("rotation lift k={k} conformal factor"),
            rep.max_factor_mismatch,
            1e-8,
            "must equal ((z∘Φ)/z)²",
        );
    }

    // the reflection generators
    let gens = involution_generators(mono).map_err(|e| e.to_string())?;
    let mut named: Vec<(String, BundleMap)> = vec![("Φ₃".into(), gens.phi3.clone())];
    if let (Some(p1), Some(p2)) = (gens.phi1.clone(), gens.phi2.clone()) {
        named.push(("Φ₁".into(), p1));
        named.push(("Φ₂".into(), p2));
    }
    for (name, map) in &named {
        let rep = verify_conformal(mono, map, &pts, true).map_err(|e| e.to_string())?;
        rec.check(
            &format!("{name} conformality"),
            rep.max_deviation,
            1e-8,
            &format!("{} samples", rep.samples_used),
        );
        rec.check(
            &format!("{name} conformal factor"),
            rep.max_factor_mismatch,
            1e-8,
            "",
        );
    }

    // the extra involution for two monopole points
    if mono.n() == 2 {
        for vt in [0.0, std::f64::consts::FRAC_PI_3] {
            let lam = extra_involution(mono, vt).map_err(|e| e.to_string())?;
            let rep = verify_conformal(mono, &lam, &pts, false).map_err(|e| e.to_string())?;
            rec.check(
                &format!("extra involution ϑ={vt:.3} conformality"),
                rep.max_deviation,
                cfg.tol_conf,
                &format!("{} samples", rep.samples_used),
            );
            let sq = BundleMap::compose(&lam, &lam);
            let d =
                map_distance(mono, &sq, &BundleMap::Identity, &pts).map_err(|e| e.to_string())?;
            rec.check(
                &format!("extra involution ϑ={vt:.3} squares to id"),
                d,
                1e-10,
                "",
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn involution_group(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    let mono = toric(cfg)?;
    let gens = involution_generators(mono).map_err(|e| e.to_string())?;
    // the generator set must agree with the stabilizer classification
    if mono.n() >= 2 {
        let class = selfdual::hyperbolic::stabilizer_class(mono.points(), cfg.tau_geo)
            .map_err(|e| e.to_string())?;
        let symmetric = class == selfdual::hyperbolic::StabilizerClass::CollinearSymmetric;
        rec.expect(
            "midpoint symmetry matches the stabilizer classification",
            symmetric == gens.phi1.is_some(),
            &format!("classified {class:?}"),
        );
    }
    match (&gens.phi1, &gens.phi2) {
        (Some(p1), Some(p2)) => {
            let maps = vec![
                BundleMap::Identity,
                p1.clone(),
                p2.clone(),
                gens.phi3.clone(),
            ];
            let (id, _) = group_table(mono, &maps, cfg.seed, 1e-8).map_err(|e| e.to_string())?;
            rec.expect(
                "involution lifts form Z2 x Z2",
                id == GroupId::Z2Z2,
                &format!("identified {id}"),
            );
            if mono.n() == 2 {
                let lam = extra_involution(mono, 0.0).map_err(|e| e.to_string())?;
                let mut eight = maps.clone();
                for m in &maps {
                    eight.push(BundleMap::compose(&lam, m));
                }
                let (id8, _) =
                    group_table(mono, &eight, cfg.seed, 1e-8).map_err(|e| e.to_string())?;
                rec.expect(
                    "extension by the extra involution is D4",
                    id8 == GroupId::D4,
                    &format!("identified {id8}"),
                );
            }
        }
        _ => {
            let maps = vec![BundleMap::Identity, gens.phi3.clone()];
            let (id, _) = group_table(mono, &maps, cfg.seed, 1e-8).map_err(|e| e.to_string())?;
            rec.expect(
                "asymmetric configuration gives Z2",
                id == GroupId::Z2,
                &format!("identified {id}"),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn sweep_spans(model: &PoonModel, seed: u64, per_case: usize, tol: f64) -> (usize, usize) {
    use rand::Rng;
    let mut rng = rng_for(seed, "span-sweeps");
    let mut on_ok = 0;
    let mut off_ok = 0;
    for i in 0..per_case {
        let spec = ComponentSpec {
            case_ii: i % 2 == 1,
            a22_alt: rng.gen_bool(0.5),
            a_off: rng.gen_bool(0.5),
            b_off: rng.gen_bool(0.5),
        };
        let u = component_matrix(
            model,
            spec,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        if span_preserved(&u, model, tol) && commutes_with_sigma(&u, 1e-9) {
            on_ok += 1;
        }
        // perturb one parameter modulus by 1e-3, keeping the conjugate-pair
        // block shape (scaling a row pair by (ε, 1/ε) would be a torus
        // symmetry and must NOT count as a perturbation)
        let mut bad = u;
        let eps = 1.0 + 1e-3;
        let rows: [usize; 2] = match rng.gen_range(0..3) {
            0 => [0, 1],
            1 => [4, 5],
            _ => [2, 3],
        };
        for r in rows {
            for col in 0..6 {
                bad[r][col] *= eps;
            }
        }
        if !span_preserved(&bad, model, tol) {
            off_ok += 1;
        }
    }
    (on_ok, off_ok)
}

fn twistor_classification(cfg: &Config, rec: &mut Recorder, exact_mode: bool) -> SuiteOutcome {
    let model = model_for(cfg)?;
    let per_case = 2 * cfg.samples.max(100);
    let (on_ok, off_ok) = sweep_spans(&model, cfg.seed, per_case, cfg.tol_span);
    rec.expect(
        "span preserved on every constraint-satisfying matrix",
        on_ok == per_case,
        &format!("{on_ok}/{per_case}"),
    );
    rec.expect(
        "span broken by every 1e-3 modulus perturbation",
        off_ok == per_case,
        &format!("{off_ok}/{per_case}"),
    );

    // singular set preserved by all components
    use selfdual_twistor::model::{mat_vec, projectively_equal};
    let pts = model.singular_points();
    let mut ok = true;
    for spec in ComponentSpec::all() {
        let u = component_matrix(&model, spec, 0.9, -0.4);
        for p in &pts {
            let img = mat_vec(&u, p);
            ok &= pts.iter().any(|q| projectively_equal(&img, q, 1e-10));
        }
    }
    rec.expect("singular set preserved by all 16 components", ok, "");

    if exact_mode {
        let lambda = cfg.lambda.ok_or("twistor.lambda missing")?;
        match exact::ExactField::for_lambda(lambda) {
            Ok(_) => {
                let l = exact::exact_lambda_matrix();
                let (l1, l2) = exact::exact_involution_matrices();
                for (name, m) in [("Λ", &l), ("Λ₁", &l1), ("Λ₂", &l2)] {
                    let verdict =
                        exact::span_preserved_exact(lambda, m).map_err(|e| e.to_string())?;
                    rec.expect(&format!("exact span check for {name}"), verdict, "");
                }
                let mut agree = true;
                for spec in ComponentSpec::all() {
                    let ue = exact::exact_component_matrix(spec);
                    let uf = component_matrix(&model, spec, 0.0, 0.0);
                    agree &=
                        exact::agrees_with_float(lambda, &ue, &uf).map_err(|e| e.to_string())?;
                }
                rec.expect("exact and floating span verdicts agree", agree, "");
            }
            Err(e) => rec.expect("exact mode available for this λ", false, &e.to_string()),
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn resolution_lift(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    let model = model_for(cfg)?;
    for variant in [1u8, 2] {
        let res = SmallResolution {
            family: ResolutionFamily::Star,
            variant,
        };
        let census = enumerate_components(&model, res, cfg.seed).map_err(|e| e.to_string())?;
        let lifted = census.iter().filter(|(_, v)| v.lifts).count();
        rec.expect(
            &format!("exactly 8 of 16 components lift (variant {variant})"),
            lifted == 8,
            &format!("{lifted} lifted"),
        );
        let match_classification = census.iter().all(|(s, v)| v.lifts == expected_lifting(*s));
        rec.expect(
            &format!("lifting set equals the classification (variant {variant})"),
            match_classification,
            "",
        );
    }
    for variant in [1u8, 2] {
        let good = ordering_check(
            &model,
            SmallResolution {
                family: ResolutionFamily::Star,
                variant,
            },
        )
        .map_err(|e| e.to_string())?;
        rec.expect(
            &format!("boundary order realizable for the kept resolution v{variant}"),
            good.realizable,
            &format!("{:?}", good.sequence),
        );
        let bad = ordering_check(
            &model,
            SmallResolution {
                family: ResolutionFamily::StarPrime,
                variant,
            },
        )
        .map_err(|e| e.to_string())?;
        rec.expect(
            &format!("boundary order rejects the excluded resolution v{variant}"),
            !bad.realizable && bad.chords_cross,
            &format!("{:?}", bad.sequence),
        );
    }
    let (r1, r2, r3) = generator_identities(&model);
    rec.check("Λ₁² = I", r1, 1e-12, "");
    rec.check("Λ₂² = I", r2, 1e-12, "");
    rec.check("Λ² = αβ·I", r3, 1e-12, "");
    let (full, h, _) = quotient_group(&model, cfg.seed).map_err(|e| e.to_string())?;
    rec.expect(
        "component group is D4",
        full == GroupId::D4,
        &format!("got {full}"),
    );
    rec.expect(
        "node-preserving subgroup is Z2 x Z2",
        h == GroupId::Z2Z2,
        &format!("got {h}"),
    );
    let bc = bc_conjugation_check(&model, cfg.seed).map_err(|e| e.to_string())?;
    for (i, r) in bc.identity_residuals.iter().enumerate() {
        rec.check(
            &format!("torus translation identity {}", i + 1),
            *r,
            1e-12,
            "",
        );
    }
    rec.check("U G₁ U⁻¹ = G₃", bc.conjugation_residual, 1e-10, "");
    rec.expect(
        "Λ·H products land in the node-swapping components",
        lambda_times_h_is_case_ii(&model, cfg.seed).map_err(|e| e.to_string())?,
        "",
    );

    // cross-module consistency: the conic permutation and the divisor
    // permutation agree pairwise
    let (_, _, l) = selfdual_twistor::resolution::generators(&model);
    let conic_perm =
        selfdual_twistor::conics::conic_permutation(&l, &model, 1e-9).map_err(|e| e.to_string())?;
    let div_perm = selfdual_twistor::resolution::divisor_action(&l, &model, 1e-9)
        .map_err(|e| e.to_string())?;
    let mut compatible = true;
    for j in 0..4 {
        // conic j is cut out by the same first linear form as cones 2j, 2j+1
        let pair_image = (div_perm[2 * j] / 2, div_perm[2 * j + 1] / 2);
        compatible &= pair_image.0 == conic_perm[j] && pair_image.1 == conic_perm[j];
    }
    rec.expect(
        "conic and divisor permutations are compatible",
        compatible,
        "",
    );
    Ok(())
}

// ---------------------------------------------------------------------------

fn einstein_weyl(cfg: &Config, rec: &mut Recorder) -> SuiteOutcome {
    use rand::Rng;
    let model = model_for(cfg)?;
    let mut rng = rng_for(cfg.seed, "ew-suite");
    let mut agree = 0usize;
    let mut total = 0usize;
    while total < 1000 {
        let b: f64 = rng.gen_range(-2.5..2.5);
        let c = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let side = if rng.gen_bool(0.5) {
            EwSide::One
        } else {
            EwSide::Three
        };
        let margin = match side {
            EwSide::One => (b * b + 2.0 * c.norm_sqr()) - 1.0 / (model.alpha * model.alpha),
            EwSide::Three => 1.0 / (model.beta * model.beta) - (b * b - 2.0 * c.norm_sqr()),
        };
        if margin.abs() < 1e-3 {
            continue;
        }
        total += 1;
        let adm = ew_admissible(side, &model, b, c);
        let search = real_point_search(side, &model, b, c);
        if adm == search.is_none() {
            agree += 1;
        }
    }
    rec.expect(
        "region inequality agrees with the real-point search",
        agree == total,
        &format!("{agree}/{total}"),
    );

    // involution relations hold exactly
    let b = 0.41;
    let c = Complex64::new(-0.23, 0.5);
    let [f1, f2, f3] = ew_involutions(b, c);
    let mut exact_ok = ew_involutions(f1.0, f1.1)[0] == (b, c)
        && ew_involutions(f2.0, f2.1)[1] == (b, c)
        && ew_involutions(f3.0, f3.1)[2] == (b, c);
    let f3v = ew_involutions(b, c)[2];
    exact_ok &= ew_involutions(f3v.0, f3v.1)[1] == f1;
    rec.expect(
        "parameter involutions are involutive with φ₂φ₃ = φ₁",
        exact_ok,
        "",
    );

    // monopole images fixed by φ₃ and swapped by φ₁
    let [mp, mq] = ew_monopole_images(EwSide::One, &model);
    let fixed = ew_involutions(mp.0, mp.1)[2] == mp;
    let swapped = ew_involutions(mp.0, mp.1)[0] == mq;
    rec.expect(
        "monopole images fixed by φ₃ and swapped by φ₁",
        fixed && swapped,
        "",
    );

    // the dual action maps the admissible region into the admissible region
    let mut mapped = 0;
    let mut tried = 0;
    while tried < 200 {
        let bp: f64 = rng.gen_range(-4.0..4.0);
        let cp = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if bp.abs() < 1e-3 || !ew_admissible(EwSide::Three, &model, bp, cp) {
            continue;
        }
        tried += 1;
        let (bb, cc) = lambda_dual_action(&model, bp, cp).map_err(|e| e.to_string())?;
        if ew_admissible(EwSide::One, &model, bb, cc) {
            mapped += 1;
        }
    }
    rec.expect(
        "dual action maps admissible planes to admissible planes",
        mapped == tried,
        &format!("{mapped}/{tried}"),
    );

    // angular shift and the comparison against the chart-level involution
    let shift = angular_shift_check(&model).map_err(|e| e.to_string())?;
    rec.check(
        "angular relation θ₁ = θ₃ + 3π/2",
        (shift.theta1_minus_theta3 - 3.0 * std::f64::consts::FRAC_PI_2).abs(),
        1e-12,
        "",
    );
    if cfg.monopoles.is_toric() && cfg.monopoles.n() == 2 {
        let mono = &cfg.monopoles;
        let lam = extra_involution(mono, std::f64::consts::FRAC_PI_2).map_err(|e| e.to_string())?;
        let p =
            ChartPoint::new(mono, ChartId(2), 0.9, 0.7, 1.4, -0.3).map_err(|e| e.to_string())?;
        let q = lam.apply(mono, &p).map_err(|e| e.to_string())?;
        let d1 = wrap_angle(q.theta1 - p.theta3);
        let d3 = wrap_angle(q.theta3 - p.theta1);
        let mut got = [d1, d3];
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want = [shift.swap_shifts.0, shift.swap_shifts.1];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let match_res = (got[0] - want[0]).abs().max((got[1] - want[1]).abs());
        rec.check(
            "dual action matches the chart-level angular swap of Λ̃(π/2)",
            match_res,
            1e-12,
            &format!("shifts {got:?} vs {want:?}"),
        );
    }

    // semi-free circle subgroups
    let two = semifree_circle_subgroups(2).map_err(|e| e.to_string())?;
    rec.expect(
        "two semi-free circle subgroups for n = 2",
        two.len() == 2,
        "",
    );
    for n in 3..=6 {
        let one = semifree_circle_subgroups(n).map_err(|e| e.to_string())?;
        rec.expect(
            &format!("one semi-free circle subgroup for n = {n}"),
            one.len() == 1,
            "",
        );
    }
    Ok(())
}
