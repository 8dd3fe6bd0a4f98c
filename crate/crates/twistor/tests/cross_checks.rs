//! Cross-module invariants of the projective model: functoriality and
//! compatibility of the two permutation actions, and λ-independence of the
//! discrete structure.

use rand::Rng;
use selfdual::group::GroupId;
use selfdual::sample::rng_for;
use selfdual_twistor::conics::conic_permutation;
use selfdual_twistor::model::{build_poon_model, component_matrix, mat_mul, ComponentSpec};
use selfdual_twistor::resolution::{
    divisor_action, enumerate_components, expected_lifting, quotient_group, ResolutionFamily,
    SmallResolution,
};

#[test]
fn conic_and_divisor_permutations_are_compatible() {
    // conic j is cut out by the same first linear form as the cone pair
    // {D'_j, D̄'_j}; any automorphism candidate must permute them in step
    let model = build_poon_model(1.75).unwrap();
    let mut rng = rng_for(11, "cross-perm");
    let lifting: Vec<ComponentSpec> = ComponentSpec::all()
        .into_iter()
        .filter(|s| expected_lifting(*s))
        .collect();
    for _ in 0..50 {
        let spec = lifting[rng.gen_range(0..lifting.len())];
        let u = component_matrix(
            &model,
            spec,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let cp = conic_permutation(&u, &model, 1e-9).unwrap();
        let dp = divisor_action(&u, &model, 1e-9).unwrap();
        for j in 0..4 {
            assert_eq!(dp[2 * j] / 2, cp[j], "{}", spec.label());
            assert_eq!(dp[2 * j + 1] / 2, cp[j], "{}", spec.label());
        }
    }
}

#[test]
fn conic_permutation_is_functorial() {
    let model = build_poon_model(1.8).unwrap();
    let mut rng = rng_for(12, "conic-functorial");
    let lifting: Vec<ComponentSpec> = ComponentSpec::all()
        .into_iter()
        .filter(|s| expected_lifting(*s))
        .collect();
    for _ in 0..25 {
        let s1 = lifting[rng.gen_range(0..lifting.len())];
        let s2 = lifting[rng.gen_range(0..lifting.len())];
        let u1 = component_matrix(
            &model,
            s1,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let u2 = component_matrix(
            &model,
            s2,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let p1 = conic_permutation(&u1, &model, 1e-9).unwrap();
        let p2 = conic_permutation(&u2, &model, 1e-9).unwrap();
        let p12 = conic_permutation(&mat_mul(&u1, &u2), &model, 1e-9).unwrap();
        for j in 0..4 {
            assert_eq!(p12[j], p1[p2[j]]);
        }
    }
}

#[test]
fn census_and_quotient_are_lambda_independent() {
    let mut rng = rng_for(13, "lambda-sweep");
    for _ in 0..5 {
        let lambda = rng.gen_range(1.52..1.98);
        let model = build_poon_model(lambda).unwrap();
        for variant in [1, 2] {
            let census = enumerate_components(
                &model,
                SmallResolution {
                    family: ResolutionFamily::Star,
                    variant,
                },
                99,
            )
            .unwrap();
            for (spec, verdict) in census {
                assert_eq!(
                    verdict.lifts,
                    expected_lifting(spec),
                    "λ = {lambda}, {}",
                    spec.label()
                );
            }
        }
        let (full, h, lifting) = quotient_group(&model, 42).unwrap();
        assert_eq!(full, GroupId::D4, "λ = {lambda}");
        assert_eq!(h, GroupId::Z2Z2);
        assert_eq!(lifting.len(), 8);
    }
}
