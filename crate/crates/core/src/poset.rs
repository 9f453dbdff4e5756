//! Möbius functions of finite posets, in particular subgroup posets.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::Group;

/// A finite poset together with its Möbius function.
#[derive(Debug, Clone)]
pub struct PosetMobius<K> {
    pub elements: Vec<K>,
    index: HashMap<K, usize>,
    leq: Vec<Vec<bool>>,
    mu: Vec<Vec<i64>>,
}

/// Builds the Möbius table, checking that `leq` is a partial order and
/// re-checking the defining identity afterwards.
pub fn mobius_table<K, F>(elements: Vec<K>, leq: F) -> Result<PosetMobius<K>>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, &K) -> bool,
{
    let n = elements.len();
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(&elements[i], &elements[j])).collect()).collect();
    for i in 0..n {
        if !rel[i][i] {
            return Err(Error::NotAPartialOrder(format!("element {i} is not below itself")));
        }
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                return Err(Error::NotAPartialOrder(format!("elements {i} and {j} are mutually below")));
            }
            if rel[i][j] && (0..n).any(|k| rel[j][k] && !rel[i][k]) {
                return Err(Error::NotAPartialOrder(format!("transitivity fails at {i} <= {j}")));
            }
        }
    }
    let index: HashMap<K, usize> = elements.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    if index.len() != n {
        return Err(Error::NotAPartialOrder("duplicate elements".into()));
    }
    // a linear extension: by number of elements below
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (0..n).filter(|&i| rel[i][j]).count());
    let mut mu = vec![vec![0i64; n]; n];
    for x in 0..n {
        for &y in &order {
            if !rel[x][y] {
                continue;
            }
            mu[x][y] = if x == y {
                1
            } else {
                -(0..n).filter(|&z| z != y && rel[x][z] && rel[z][y]).map(|z| mu[x][z]).sum::<i64>()
            };
        }
    }
    let table = PosetMobius { elements, index, leq: rel, mu };
    debug_assert!(table.defining_identity_holds());
    Ok(table)
}

impl<K: Clone + Eq + Hash> PosetMobius<K> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn leq(&self, x: &K, y: &K) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.leq[i][j],
            _ => false,
        }
    }

    /// `μ(x, y)`; zero unless `x <= y`. Panics on keys outside the poset.
    pub fn mu(&self, x: &K, y: &K) -> i64 {
        let i = self.index_of(x).expect("key outside poset");
        let j = self.index_of(y).expect("key outside poset");
        self.mu[i][j]
    }

    /// `Σ_{x<=z<=y} μ(x,z) = [x = y]` for all `x <= y`.
    pub fn defining_identity_holds(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).filter(|&y| self.leq[x][y]).all(|y| {
                let s: i64 = (0..n).filter(|&z| self.leq[x][z] && self.leq[z][y]).map(|z| self.mu[x][z]).sum();
                s == i64::from(x == y)
            })
        })
    }
}

/// Möbius function of the poset of all subgroups of `g`.
pub fn mobius_subgroups(g: &Group) -> &PosetMobius<Bits> {
    g.cache.mobius.get_or_init(|| {
        mobius_table(g.lattice().all.clone(), |a, b| a.is_subset(b)).expect("inclusion is a partial order")
    })
}

/// Möbius function of the poset of normal subgroups of the subgroup `t` of `g`.
pub fn mobius_normals_in(g: &Group, t: &Bits) -> Arc<PosetMobius<Bits>> {
    if let Some(m) = g.cache.normal_mobius.lock().get(t) {
        return m.clone();
    }
    let normals: Vec<Bits> = g.lattice().subgroups_of(t).filter(|h| g.normalizes(t, h)).copied().collect();
    let m = Arc::new(mobius_table(normals, |a, b| a.is_subset(b)).expect("inclusion is a partial order"));
    g.cache.normal_mobius.lock().entry(*t).or_insert(m).clone()
}

/// `μ(X, T)` over subgroups of `t` necessarily vanishes when `X` does not
/// contain `Φ(T)`.
pub fn mu_vanishes(g: &Group, x: &Bits, t: &Bits) -> bool {
    !g.frattini_of(t).is_subset(x)
}

/// `μ(X, T)` in the subgroup poset of `g` (the interval `[X, T]` is the
/// same in the subgroup poset of `T`).
pub fn mu_subgroups(g: &Group, x: &Bits, t: &Bits) -> i64 {
    if !x.is_subset(t) || mu_vanishes(g, x, t) {
        return 0;
    }
    mobius_subgroups(g).mu(x, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(name: &str, deg: usize, gens: &[&[usize]]) -> Arc<Group> {
        Group::from_permutations(name, deg, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn chain() {
        let m = mobius_table(vec![0, 1], |a, b| a <= b).unwrap();
        assert_eq!(m.mu(&0, &1), -1);
        assert_eq!(m.mu(&1, &0), 0);
        let m = mobius_table(vec![0, 1, 2], |a, b| a <= b).unwrap();
        assert_eq!(m.mu(&0, &2), 0);
    }

    #[test]
    fn not_a_partial_order() {
        assert!(mobius_table(vec![0, 1], |_, _| true).is_err());
        assert!(mobius_table(vec![0, 1], |a, b| a < b).is_err());
        // 0<1, 1<2 but not 0<2
        assert!(mobius_table(vec![0, 1, 2], |a, b| a == b || (*a, *b) == (0, 1) || (*a, *b) == (1, 2)).is_err());
    }

    #[test]
    fn boolean_lattice() {
        // subsets of {0,1,2} as bitmasks: μ(∅, full) = (-1)^3
        let m = mobius_table((0u8..8).collect(), |a, b| a & !b == 0).unwrap();
        assert_eq!(m.mu(&0, &7), -1);
        assert_eq!(m.mu(&1, &7), 1);
        assert!(m.defining_identity_holds());
    }

    #[test]
    fn subgroup_posets() {
        let c5 = perm("C5", 5, &[&[1, 2, 3, 4, 0]]);
        assert_eq!(mobius_subgroups(&c5).mu(&c5.trivial(), &c5.whole()), -1);
        let v = perm("V", 4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert_eq!(mobius_subgroups(&v).mu(&v.trivial(), &v.whole()), 2);
        let c4 = perm("C4", 4, &[&[1, 2, 3, 0]]);
        assert_eq!(mu_subgroups(&c4, &c4.trivial(), &c4.whole()), 0);
        assert!(mu_vanishes(&c4, &c4.trivial(), &c4.whole()));
        assert_eq!(mobius_subgroups(&c4).mu(&c4.trivial(), &c4.whole()), 0);
        let q8 = perm("Q8", 8, &[&[1, 4, 3, 6, 5, 0, 7, 2], &[2, 7, 4, 1, 6, 3, 0, 5]]);
        let n = mobius_normals_in(&q8, &q8.whole());
        assert_eq!(n.mu(&q8.center(), &q8.whole()), 2);
        for h in &q8.lattice().all {
            assert_eq!(mobius_subgroups(&q8).mu(h, h), 1);
        }
    }
}
