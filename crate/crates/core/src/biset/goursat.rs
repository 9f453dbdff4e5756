//! Goursat data of subgroups of direct products, and the classes of
//! subgroups of `G×G` with both projections surjective.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{space, BisetSpace};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{all_isomorphisms, is_isomorphic, random_isomorphism, Group, Quotient};

/// Projections and kernels of `L <= H×G`: `p1, k1 <= H`, `p2, k2 <= G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Goursat {
    pub p1: Bits,
    pub k1: Bits,
    pub p2: Bits,
    pub k2: Bits,
}

impl Goursat {
    pub(super) fn from_fibers(left_fiber: &[Bits], right_fiber: &[Bits]) -> Goursat {
        Goursat {
            p1: (0..left_fiber.len()).filter(|&h| !left_fiber[h].is_empty()).collect(),
            k1: right_fiber[0],
            p2: (0..right_fiber.len()).filter(|&g| !right_fiber[g].is_empty()).collect(),
            k2: left_fiber[0],
        }
    }

    /// Goursat data of an arbitrary subgroup of the ambient product.
    pub fn of(space: &BisetSpace, l: &Bits) -> Goursat {
        let (nl, nr) = (space.left.order(), space.right.order());
        let mut left = vec![Bits::empty(); nl];
        let mut right = vec![Bits::empty(); nr];
        for x in l.iter() {
            let (h, g) = space.unpair(x);
            left[h].insert(g);
            right[g].insert(h);
        }
        Self::from_fibers(&left, &right)
    }

    /// `|q(L)| = |p1|/|k1| = |p2|/|k2|`.
    pub fn q_order(&self) -> usize {
        self.p1.len() / self.k1.len()
    }
}

/// `q(L) = L / (k1(L) × k2(L))` as a group.
pub fn q_group(space: &BisetSpace, l: &Bits) -> Result<Arc<Quotient>> {
    let gs = Goursat::of(space, l);
    let mut kk = Bits::empty();
    for a in gs.k1.iter() {
        for b in gs.k2.iter() {
            kk.insert(space.pair(a, b));
        }
    }
    space.ambient.section_group(l, &kk)
}

/// `{(a,b) in G×G : θ(b N2) = a N1}` for an isomorphism `θ: G/N2 -> G/N1`
/// given as images of quotient elements.
fn glue(sp: &BisetSpace, q1: &Quotient, q2: &Quotient, theta: &[usize]) -> Bits {
    let n = sp.left.order();
    let mut l = Bits::empty();
    for a in 0..n {
        for b in 0..n {
            if q1.proj[a] == theta[q2.proj[b]] {
                l.insert(sp.pair(a, b));
            }
        }
    }
    l
}

/// Classes of `Σ(G,G) = {L <= G×G : p1(L) = p2(L) = G}` by filtering the full
/// subgroup lattice of `G×G` (gated by the ambient order).
pub fn sigma_classes(g: &Arc<Group>, gate: usize) -> Result<Vec<u32>> {
    let sp = space(g, g)?;
    let whole = g.whole();
    Ok(sp
        .all_classes(gate)?
        .into_iter()
        .filter(|&c| {
            let gs = sp.class(c).goursat;
            gs.p1 == whole && gs.p2 == whole
        })
        .collect())
}

/// Classes of `Σ(G,G)` built from Goursat data: pairs of normal subgroups
/// `N1, N2` with isomorphic quotients and every isomorphism between them.
/// With `sample = Some((rng, count))` only `count` random gluings are drawn.
pub fn sigma_synthesized<R: Rng>(g: &Arc<Group>, sample: Option<(&mut R, usize)>) -> Result<Vec<u32>> {
    let sp = space(g, g)?;
    let normals = g.lattice().normals.clone();
    let mut pairs = Vec::new();
    for n1 in &normals {
        for n2 in &normals {
            if n1.len() != n2.len() {
                continue;
            }
            let (q1, q2) = (g.quotient(n1)?, g.quotient(n2)?);
            if is_isomorphic(&q2.group, &q1.group).is_some() {
                pairs.push((q1, q2));
            }
        }
    }
    let mut out = BTreeSet::new();
    match sample {
        None => {
            for (q1, q2) in &pairs {
                for theta in all_isomorphisms(&q2.group, &q1.group) {
                    out.insert(sp.class_of(&glue(&sp, q1, q2, &theta.images)));
                }
            }
        }
        Some((rng, count)) => {
            if pairs.is_empty() {
                return Err(Error::Hypothesis("no gluing data".into()));
            }
            for _ in 0..count {
                let (q1, q2) = pairs.choose(rng).unwrap();
                let theta = random_isomorphism(&q2.group, &q1.group, rng).expect("quotients are isomorphic");
                out.insert(sp.class_of(&glue(&sp, q1, q2, &theta.images)));
            }
        }
    }
    let mut v: Vec<u32> = out.into_iter().collect();
    v.sort_by_key(|&c| sp.class(c).rep);
    Ok(v)
}
