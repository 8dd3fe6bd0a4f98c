//! Weight census of circle subgroups of the torus acting on the blown-up
//! surface: a subgroup is semi-free iff its weights on the invariant curves
//! all lie in `{-1, 0, +1}` and the action is nontrivial.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleSubgroup {
    /// `{t = 1}` — parametrized by `s`.
    TFixed,
    /// `{s = 1}` — parametrized by `t`.
    SFixed,
    /// `{t = s^k}`.
    Diagonal(usize),
}

#[derive(Clone, Debug)]
pub struct SubgroupReport {
    pub subgroup: CircleSubgroup,
    /// Weights on the invariant curves.
    pub weights: Vec<i64>,
    pub semi_free: bool,
}

/// Torus weights `(t, s)` on the n+2 invariant curves:
/// `t, s⁻¹, ts⁻¹, ts⁻², …, ts⁻ⁿ`.
fn curve_weights(n: usize) -> Vec<(i64, i64)> {
    let mut w = vec![(1, 0), (0, -1)];
    for k in 1..=n {
        w.push((1, -(k as i64)));
    }
    w
}

/// All circle subgroups with non-isolated fixed locus, with their weight
/// lists and the semi-free verdict.
pub fn circle_subgroup_census(n: usize) -> Result<Vec<SubgroupReport>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "need n >= 2 monopole points, got {n}"
        )));
    }
    let curves = curve_weights(n);
    let mut out = Vec::new();
    let mut push = |sub: CircleSubgroup, weights: Vec<i64>| {
        let semi_free =
            weights.iter().all(|w| (-1..=1).contains(w)) && weights.iter().any(|&w| w != 0);
        out.push(SubgroupReport {
            subgroup: sub,
            weights,
            semi_free,
        });
    };
    push(
        CircleSubgroup::TFixed,
        curves.iter().map(|&(_, b)| b).collect(),
    );
    push(
        CircleSubgroup::SFixed,
        curves.iter().map(|&(a, _)| a).collect(),
    );
    for k in 1..=n {
        push(
            CircleSubgroup::Diagonal(k),
            curves.iter().map(|&(a, b)| k as i64 * a + b).collect(),
        );
    }
    Ok(out)
}

/// The semi-free subgroups only.
pub fn semifree_circle_subgroups(n: usize) -> Result<Vec<CircleSubgroup>> {
    Ok(circle_subgroup_census(n)?
        .into_iter()
        .filter(|r| r.semi_free)
        .map(|r| r.subgroup)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_counts() {
        assert_eq!(
            semifree_circle_subgroups(2).unwrap(),
            vec![CircleSubgroup::SFixed, CircleSubgroup::Diagonal(1)]
        );
        for n in 3..=6 {
            assert_eq!(
                semifree_circle_subgroups(n).unwrap(),
                vec![CircleSubgroup::SFixed],
                "n = {n}"
            );
        }
        assert!(semifree_circle_subgroups(1).is_err());
    }

    #[test]
    fn diagonal_weights_example() {
        // n = 5, k = 3: weights {3, -1, 2, 1, 0, -1, -2} contain |2| > 1
        let census = circle_subgroup_census(5).unwrap();
        let rep = census
            .iter()
            .find(|r| r.subgroup == CircleSubgroup::Diagonal(3))
            .unwrap();
        assert_eq!(rep.weights, vec![3, -1, 2, 1, 0, -1, -2]);
        assert!(!rep.semi_free);
    }
}
