//! Isomorphism testing by backtracking over images of generators.

use super::{Group, GroupMap};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest order for which automorphism groups are enumerated by default.
pub const DEFAULT_AUT_CAP: usize = 64;

/// Cheap isomorphism invariants used to prune the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: usize,
    /// `orders[k]` = number of elements of order `k`.
    pub order_profile: Vec<usize>,
    pub center: usize,
    pub derived: usize,
    /// Element-order profile of the abelianization.
    pub abelianization: Vec<usize>,
}

impl Group {
    pub fn invariants(&self) -> &Invariants {
        self.cache.invariants.get_or_init(|| {
            let profile = |g: &Group| {
                let mut v = vec![0; g.order() + 1];
                for x in 0..g.order() {
                    v[g.elt_order(x)] += 1;
                }
                v
            };
            let d = self.derived_subgroup();
            let ab = self.section_group(&self.whole(), &d).expect("derived subgroup is normal");
            Invariants {
                order: self.order(),
                order_profile: profile(self),
                center: self.center().len(),
                derived: d.len(),
                abelianization: profile(&ab.group),
            }
        })
    }

    fn centralizer_size(&self, x: usize) -> usize {
        (0..self.order()).filter(|&y| self.mul(x, y) == self.mul(y, x)).count()
    }
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    cands: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends `images[..k]` along the Cayley graph of the first `k`
    /// generators; `None` on any inconsistency.
    fn propagate(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = Bits::singleton(0);
        map[0] = 0;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (j, &gj) in self.gens[..images.len()].iter().enumerate() {
                let y = self.g.mul(x, gj);
                let img = self.h.mul(map[x], images[j]);
                if map[y] == usize::MAX {
                    if !used.insert(img) {
                        return None;
                    }
                    map[y] = img;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&self, images: &mut Vec<usize>, out: &mut Vec<GroupMap>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let k = images.len();
        if k == self.gens.len() {
            if let Some(map) = self.propagate(images) {
                if map.iter().all(|&y| y != usize::MAX) {
                    out.push(GroupMap { images: map });
                }
            }
            return;
        }
        for &c in &self.cands[k] {
            images.push(c);
            if self.propagate(images).is_some() {
                self.run(images, out, limit);
            }
            images.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn search(g: &Group, h: &Group, limit: usize) -> Vec<GroupMap> {
    search_with(g, h, limit, |_| {})
}

fn search_with(g: &Group, h: &Group, limit: usize, mut reorder: impl FnMut(&mut Vec<usize>)) -> Vec<GroupMap> {
    if g.order() != h.order() || g.invariants() != h.invariants() {
        return Vec::new();
    }
    let gens = g.generators().to_vec();
    let same = g.id() == h.id();
    let cands = gens
        .iter()
        .map(|&x| {
            let (o, c) = (g.elt_order(x), g.centralizer_size(x));
            let mut v: Vec<usize> =
                (0..h.order()).filter(|&y| h.elt_order(y) == o && h.centralizer_size(y) == c).collect();
            if same {
                // try the identity assignment first
                v.sort_by_key(|&y| (y != x, y));
            }
            reorder(&mut v);
            v
        })
        .collect();
    let s = Search { g, h, gens, cands };
    let mut out = Vec::new();
    s.run(&mut Vec::new(), &mut out, limit);
    out
}

/// An isomorphism `g -> h` if one exists. Deterministic; for `h = g` the
/// identity is returned.
pub fn is_isomorphic(g: &Group, h: &Group) -> Option<GroupMap> {
    search(g, h, 1).pop()
}

pub fn isomorphic(g: &Group, h: &Group) -> bool {
    is_isomorphic(g, h).is_some()
}

/// An isomorphism found with candidate images tried in random order; cheap
/// even when the number of isomorphisms is large.
pub fn random_isomorphism<R: rand::Rng>(g: &Group, h: &Group, rng: &mut R) -> Option<GroupMap> {
    use rand::seq::SliceRandom;
    search_with(g, h, 1, |v| v.shuffle(rng)).pop()
}

/// All isomorphisms `g -> h`.
pub fn all_isomorphisms(g: &Group, h: &Group) -> Vec<GroupMap> {
    search(g, h, usize::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AutomorphismCounts {
    pub aut_order: usize,
    pub inn_order: usize,
    pub out_order: usize,
}

pub fn automorphisms(g: &Group) -> Result<AutomorphismCounts> {
    automorphisms_capped(g, DEFAULT_AUT_CAP)
}

pub fn automorphisms_capped(g: &Group, cap: usize) -> Result<AutomorphismCounts> {
    if g.order() > cap {
        return Err(Error::GateExceeded(format!(
            "automorphism enumeration limited to order {cap}, group has order {}",
            g.order()
        )));
    }
    let aut = all_isomorphisms(g, g).len();
    let inn = g.order() / g.center().len();
    Ok(AutomorphismCounts { aut_order: aut, inn_order: inn, out_order: aut / inn })
}

pub fn is_nilpotent(g: &Group) -> bool {
    g.upper_central_series_terminates()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn perm(name: &str, deg: usize, gens: &[&[usize]]) -> Arc<Group> {
        Group::from_permutations(name, deg, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn d8() -> Arc<Group> {
        perm("D8", 4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]])
    }

    fn q8() -> Arc<Group> {
        perm("Q8", 8, &[&[1, 4, 3, 6, 5, 0, 7, 2], &[2, 7, 4, 1, 6, 3, 0, 5]])
    }

    #[test]
    fn non_isomorphic_pairs() {
        let c4 = perm("C4", 4, &[&[1, 2, 3, 0]]);
        let v = perm("V", 4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert!(is_isomorphic(&c4, &v).is_none());
        assert!(is_isomorphic(&d8(), &q8()).is_none());
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let g = d8();
        assert_eq!(is_isomorphic(&g, &g).unwrap(), GroupMap::identity(8));
    }

    #[test]
    fn isomorphism_between_presentations() {
        // D8 as a regular permutation group vs. on 4 points
        let g = d8();
        let reg: Vec<Vec<usize>> =
            g.generators().iter().map(|&x| (0..8).map(|y| g.mul(y, x)).collect()).collect();
        let h = Group::from_permutations("D8reg", 8, &reg).unwrap();
        let f = is_isomorphic(&g, &h).unwrap();
        assert!(f.is_homomorphism(&g, &h));
        assert!(f.is_bijective(8));
    }

    #[test]
    fn automorphism_counts() {
        let c2 = perm("C2", 2, &[&[1, 0]]);
        assert_eq!(automorphisms(&c2).unwrap(), AutomorphismCounts { aut_order: 1, inn_order: 1, out_order: 1 });
        let c4 = perm("C4", 4, &[&[1, 2, 3, 0]]);
        assert_eq!(automorphisms(&c4).unwrap().out_order, 2);
        let a = automorphisms(&q8()).unwrap();
        assert_eq!((a.aut_order, a.inn_order, a.out_order), (24, 4, 6));
        let a = automorphisms(&d8()).unwrap();
        assert_eq!((a.aut_order, a.out_order), (8, 2));
        let s3 = perm("S3", 3, &[&[1, 2, 0], &[1, 0, 2]]);
        assert_eq!(automorphisms(&s3).unwrap().out_order, 1);
        assert!(automorphisms_capped(&q8(), 4).is_err());
    }

    #[test]
    fn nilpotent() {
        assert!(is_nilpotent(&q8()));
        assert!(!is_nilpotent(&perm("S3", 3, &[&[1, 2, 0], &[1, 0, 2]])));
        assert!(is_nilpotent(&perm("C6", 5, &[&[1, 0, 3, 4, 2]])));
    }
}
