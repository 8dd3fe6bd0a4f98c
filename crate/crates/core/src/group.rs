//! Identification of small finite groups from multiplication tables.
//!
//! Tables are `table[i][j] = index of g_i * g_j`. The catalogue covers the
//! groups that occur as component groups here: Z₂, Z₄, Z₂⊕Z₂, D₄ and Q₈.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupId {
    Trivial,
    Z2,
    Z4,
    Z2Z2,
    D4,
    Q8,
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GroupId::Trivial => "1",
            GroupId::Z2 => "Z2",
            GroupId::Z4 => "Z4",
            GroupId::Z2Z2 => "Z2xZ2",
            GroupId::D4 => "D4",
            GroupId::Q8 => "Q8",
        };
        f.write_str(s)
    }
}

fn is_table_valid(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    t.iter()
        .all(|row| row.len() == n && row.iter().all(|&e| e < n))
}

fn identity_of(t: &[Vec<usize>]) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|i| t[e][i] == i && t[i][e] == i))
}

fn element_orders(t: &[Vec<usize>], e: usize) -> Vec<usize> {
    let n = t.len();
    (0..n)
        .map(|g| {
            let mut x = g;
            let mut ord = 1;
            while x != e {
                x = t[x][g];
                ord += 1;
                assert!(ord <= n + 1, "not a group table");
            }
            ord
        })
        .collect()
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect()
}

fn klein_table() -> Vec<Vec<usize>> {
    // indices = bit pairs, product = xor
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

fn d4_table() -> Vec<Vec<usize>> {
    // elements r^a s^b with r⁴ = s² = 1, s r = r⁻¹ s; index = a + 4b
    let mul = |x: usize, y: usize| -> usize {
        let (a1, b1) = (x % 4, x / 4);
        let (a2, b2) = (y % 4, y / 4);
        // (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + a2·(-1)^b1) s^(b1+b2)
        let a = if b1 == 0 {
            (a1 + a2) % 4
        } else {
            (a1 + 4 - a2 % 4) % 4
        };
        let b = (b1 + b2) % 2;
        a + 4 * b
    };
    (0..8)
        .map(|i| (0..8).map(|j| mul(i, j)).collect())
        .collect()
}

fn q8_table() -> Vec<Vec<usize>> {
    // 0..7 = 1, -1, i, -i, j, -j, k, -k
    let mul = |x: usize, y: usize| -> usize {
        // (sign, axis) with axis 0 = scalar, 1 = i, 2 = j, 3 = k
        let dec = |v: usize| (v % 2 == 1, v / 2);
        let enc = |neg: bool, axis: usize| axis * 2 + neg as usize;
        let (n1, a1) = dec(x);
        let (n2, a2) = dec(y);
        let (n3, a3) = match (a1, a2) {
            (0, a) => (false, a),
            (a, 0) => (false, a),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        enc(n1 ^ n2 ^ n3, a3)
    };
    (0..8)
        .map(|i| (0..8).map(|j| mul(i, j)).collect())
        .collect()
}

fn isomorphic(t1: &[Vec<usize>], t2: &[Vec<usize>]) -> bool {
    let n = t1.len();
    if t2.len() != n {
        return false;
    }
    let (Some(e1), Some(e2)) = (identity_of(t1), identity_of(t2)) else {
        return false;
    };
    let ord1 = element_orders(t1, e1);
    let ord2 = element_orders(t2, e2);
    {
        let mut s1 = ord1.clone();
        let mut s2 = ord2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
    }
    // backtracking search for a product-preserving bijection
    fn extend(
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        t1: &[Vec<usize>],
        t2: &[Vec<usize>],
        ord1: &[usize],
        ord2: &[usize],
        g: usize,
    ) -> bool {
        let n = t1.len();
        if g == n {
            return true;
        }
        if map[g].is_some() {
            return extend(map, used, t1, t2, ord1, ord2, g + 1);
        }
        for h in 0..n {
            if used[h] || ord2[h] != ord1[g] {
                continue;
            }
            // tentatively map g ↦ h and check all defined products
            map[g] = Some(h);
            used[h] = true;
            let consistent = (0..n).all(|x| {
                (0..n).all(|y| match (map[x], map[y]) {
                    (Some(mx), Some(my)) => match map[t1[x][y]] {
                        Some(mp) => t2[mx][my] == mp,
                        None => {
                            !used[t2[mx][my]] || {
                                // image already taken by a different preimage?
                                map.iter()
                                    .position(|&m| m == Some(t2[mx][my]))
                                    .map(|p| p == t1[x][y])
                                    .unwrap_or(true)
                            }
                        }
                    },
                    _ => true,
                })
            });
            if consistent && extend(map, used, t1, t2, ord1, ord2, g + 1) {
                return true;
            }
            map[g] = None;
            used[h] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    map[e1] = Some(e2);
    used[e2] = true;
    extend(&mut map, &mut used, t1, t2, &ord1, &ord2, 0)
}

/// Identifies the group given by a multiplication table against the
/// catalogue. Fails if the table is not a group or is not in the catalogue.
pub fn identify(table: &[Vec<usize>]) -> Result<GroupId> {
    if !is_table_valid(table) {
        return Err(Error::Numerical("malformed multiplication table".into()));
    }
    if identity_of(table).is_none() {
        return Err(Error::Numerical("table has no identity element".into()));
    }
    let candidates: &[(GroupId, Vec<Vec<usize>>)] = &[
        (GroupId::Trivial, cyclic_table(1)),
        (GroupId::Z2, cyclic_table(2)),
        (GroupId::Z4, cyclic_table(4)),
        (GroupId::Z2Z2, klein_table()),
        (GroupId::D4, d4_table()),
        (GroupId::Q8, q8_table()),
    ];
    for (id, t) in candidates {
        if isomorphic(table, t) {
            return Ok(*id);
        }
    }
    Err(Error::Numerical(format!(
        "group of order {} not in catalogue",
        table.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_self_identifies() {
        assert_eq!(identify(&cyclic_table(2)).unwrap(), GroupId::Z2);
        assert_eq!(identify(&cyclic_table(4)).unwrap(), GroupId::Z4);
        assert_eq!(identify(&klein_table()).unwrap(), GroupId::Z2Z2);
        assert_eq!(identify(&d4_table()).unwrap(), GroupId::D4);
        assert_eq!(identify(&q8_table()).unwrap(), GroupId::Q8);
    }

    #[test]
    fn d4_and_q8_are_distinguished() {
        assert!(!isomorphic(&d4_table(), &q8_table()));
    }

    #[test]
    fn relabeled_d4_still_d4() {
        let t = d4_table();
        let n = t.len();
        // conjugate the table by a permutation
        let perm: Vec<usize> = vec![3, 0, 6, 1, 7, 2, 5, 4];
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabeled: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| perm[t[inv[i]][inv[j]]]).collect())
            .collect();
        assert_eq!(identify(&relabeled).unwrap(), GroupId::D4);
    }
}
