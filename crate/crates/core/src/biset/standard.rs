//! The standard bisets and the embedding of the Burnside ring.

use std::sync::Arc;

use super::{space, BisetElt, Goursat};
use crate::bits::Bits;
use crate::burnside::BurnsideElt;
use crate::error::{Error, Result};
use crate::group::{Group, GroupMap};

/// `Δ(K) = {(k,k)} <= G×G`.
pub fn delta(g: &Arc<Group>, k: &Bits) -> Result<Bits> {
    let sp = space(g, g)?;
    Ok(k.iter().map(|x| sp.pair(x, x)).collect())
}

/// `Δ_M(X) = {(a,b) in X×X : ab⁻¹ in M}` for `M` normalized by `X`.
pub fn delta_m(g: &Arc<Group>, m: &Bits, x: &Bits) -> Result<Bits> {
    if !m.is_subset(x) || !g.normalizes(x, m) {
        return Err(Error::InvalidSection("M must be a normal subgroup of X".into()));
    }
    let sp = space(g, g)?;
    let mut l = Bits::empty();
    for a in x.iter() {
        for c in m.iter() {
            // b = c⁻¹a, so ab⁻¹ = c
            l.insert(sp.pair(a, g.mul(g.inv(c), a)));
        }
    }
    Ok(l)
}

/// The identity biset `[(G×G)/Δ(G)]`.
pub fn identity(g: &Arc<Group>) -> BisetElt {
    BisetElt::transitive(g, g, &delta(g, &g.whole()).expect("G×G fits")).expect("diagonal is a subgroup")
}

/// `Ind_H^G`, in `B(G, H)` where `H` is realized as a group in its own right.
pub fn ind(g: &Arc<Group>, h: &Bits) -> Result<BisetElt> {
    let sub = g.subgroup_group(h)?;
    BisetElt::from_pairs(g, &sub.group, sub.lift.iter().enumerate().map(|(x, &y)| (y, x)))
}

/// `Res_H^G = (Ind_H^G)^op`.
pub fn res(g: &Arc<Group>, h: &Bits) -> Result<BisetElt> {
    Ok(ind(g, h)?.opposite())
}

/// `Inf_{G/N}^G`, in `B(G, G/N)`.
pub fn inf(g: &Arc<Group>, n: &Bits) -> Result<BisetElt> {
    let q = g.quotient(n)?;
    BisetElt::from_pairs(g, &q.group, (0..g.order()).map(|x| (x, q.proj[x])))
}

/// `Def_{G/N}^G = (Inf_{G/N}^G)^op`.
pub fn def(g: &Arc<Group>, n: &Bits) -> Result<BisetElt> {
    Ok(inf(g, n)?.opposite())
}

/// `Iso(f)` for an isomorphism `f: G -> H`, in `B(H, G)`.
pub fn iso(g: &Arc<Group>, h: &Arc<Group>, f: &GroupMap) -> Result<BisetElt> {
    if !f.is_homomorphism(g, h) {
        return Err(Error::NotAHomomorphism);
    }
    if !f.is_bijective(h.order()) {
        return Err(Error::NotAnIsomorphism);
    }
    BisetElt::from_pairs(h, g, (0..g.order()).map(|x| (f.apply(x), x)))
}

/// `Indinf_{T/S}^G`, in `B(G, T/S)`: the subgroup `{(t, tS) : t in T}`.
pub fn indinf(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    let q = g.section_group(t, s)?;
    BisetElt::from_pairs(g, &q.group, t.iter().map(|x| (x, q.proj[x])))
}

/// `Defres_{T/S}^G = (Indinf_{T/S}^G)^op`.
pub fn defres(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    Ok(indinf(g, t, s)?.opposite())
}

/// Conjugation `c_x: T/S -> ^x T / ^x S` as an iso biset
/// `B(^xT/^xS, T/S)`.
pub fn conjugation_iso(g: &Arc<Group>, t: &Bits, s: &Bits, x: usize) -> Result<BisetElt> {
    let src = g.section_group(t, s)?;
    let (ct, cs) = (g.conjugate(x, t), g.conjugate(x, s));
    let dst = g.section_group(&ct, &cs)?;
    let images = src.lift.iter().map(|&y| dst.proj[g.conj(x, y)]).collect();
    iso(&src.group, &dst.group, &GroupMap { images })
}

/// The ring map `QB(G) -> QB(G,G)`, `[G/K] ↦ [(G×G)/Δ(K)]`.
pub fn tilde(x: &BurnsideElt) -> BisetElt {
    let g = x.group();
    let sp = space(g, g).expect("G×G fits");
    let mut r = BisetElt::zero_in(&sp);
    for (k, c) in x.terms() {
        r.add_subgroup(&delta(g, k).unwrap(), c.clone());
    }
    r
}

/// Writes `[(H×G)/L]` as `Ind ∘ Inf ∘ Iso ∘ Def ∘ Res` through the Goursat
/// data of `L`.
pub fn factorize(h: &Arc<Group>, g: &Arc<Group>, l: &Bits) -> Result<BisetElt> {
    let sp = space(h, g)?;
    if !sp.ambient.is_subgroup(l) {
        return Err(Error::NotASubgroup);
    }
    let gs = Goursat::of(&sp, l);
    let p1 = h.subgroup_group(&gs.p1)?;
    let p2 = g.subgroup_group(&gs.p2)?;
    let k1: Bits = gs.k1.iter().map(|x| p1.proj[x]).collect();
    let k2: Bits = gs.k2.iter().map(|x| p2.proj[x]).collect();
    let q1 = p1.group.quotient(&k1)?;
    let q2 = p2.group.quotient(&k2)?;
    let mut images = vec![usize::MAX; q2.group.order()];
    for x in l.iter() {
        let (a, b) = sp.unpair(x);
        images[q2.proj[p2.proj[b]]] = q1.proj[p1.proj[a]];
    }
    let f = GroupMap { images };
    let steps = [
        ind(h, &gs.p1)?,
        inf(&p1.group, &k1)?,
        iso(&q2.group, &q1.group, &f)?,
        def(&p2.group, &k2)?,
        res(g, &gs.p2)?,
    ];
    let mut acc = steps[0].clone();
    for s in &steps[1..] {
        acc = acc.compose(s)?;
    }
    Ok(acc)
}
