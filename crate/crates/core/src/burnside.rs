//! The rational Burnside ring of a finite group.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::poset::{mobius_subgroups, mu_subgroups};
use crate::rational::{qi, to_string, Q};

/// An element of `QB(G)`: rational combination of the classes `[G/H]`,
/// keyed by canonical class representatives.
#[derive(Clone)]
pub struct BurnsideElt {
    group: Arc<Group>,
    coeffs: BTreeMap<Bits, Q>,
}

impl PartialEq for BurnsideElt {
    fn eq(&self, other: &Self) -> bool {
        self.group.id() == other.group.id() && self.coeffs == other.coeffs
    }
}

impl Eq for BurnsideElt {}

impl fmt::Debug for BurnsideElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BurnsideElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().map(|(h, c)| format!("{}*[G/{:?}]", to_string(c), h)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl BurnsideElt {
    pub fn zero(g: &Arc<Group>) -> Self {
        BurnsideElt { group: g.clone(), coeffs: BTreeMap::new() }
    }

    /// `[G/H]`.
    pub fn basis(g: &Arc<Group>, h: &Bits) -> Result<Self> {
        let rep = g.lattice().canonical(h).ok_or(Error::NotASubgroup)?;
        Ok(BurnsideElt { group: g.clone(), coeffs: BTreeMap::from([(rep, qi(1))]) })
    }

    /// `[G/G]`, the unit.
    pub fn one(g: &Arc<Group>) -> Self {
        Self::basis(g, &g.whole()).expect("G is a subgroup of itself")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bits, &Q)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, h: &Bits) -> Q {
        let rep = self.group.lattice().canonical(h).unwrap_or(*h);
        self.coeffs.get(&rep).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, rep: Bits, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(rep).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&rep);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group.id() != other.group.id() {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group.name(), other.group.name())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (h, c) in &other.coeffs {
            r.add_term(*h, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero(&self.group);
        for (h, c) in &self.coeffs {
            r.add_term(*h, c * s);
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let g = &self.group;
        let mut r = Self::zero(g);
        for (h, a) in &self.coeffs {
            for (k, b) in &other.coeffs {
                let ab = a * b;
                for (l, n) in basis_product(g, h, k) {
                    r.add_term(l, &ab * qi(n as i64));
                }
            }
        }
        Ok(r)
    }

    /// Marks of `self`, indexed like `g.lattice().classes`.
    pub fn marks(&self) -> Vec<Q> {
        let g = &self.group;
        let lat = g.lattice();
        lat.classes
            .iter()
            .map(|cls| {
                self.coeffs.iter().fold(Q::zero(), |acc, (h, c)| acc + c * qi(mark(g, &cls.rep, h) as i64))
            })
            .collect()
    }
}

/// `Res_H^G x`, over the group `H` of `g.subgroup_group(h)`.
pub fn restrict(x: &BurnsideElt, h: &Bits) -> Result<BurnsideElt> {
    let g = x.group();
    let sub = g.subgroup_group(h)?;
    let hl = sub.group.lattice();
    let mut r = BurnsideElt::zero(&sub.group);
    for (k, c) in x.terms() {
        let mut seen = Bits::empty();
        for y in 0..g.order() {
            if seen.contains(y) {
                continue;
            }
            for a in h.iter() {
                for b in k.iter() {
                    seen.insert(g.mul(g.mul(a, y), b));
                }
            }
            let l: Bits = h.intersection(&g.conjugate(y, k)).iter().map(|z| sub.proj[z]).collect();
            r.add_term(hl.canonical(&l).expect("image of a subgroup"), c.clone());
        }
    }
    Ok(r)
}

fn check_group(y: &BurnsideElt, want: &Group) -> Result<()> {
    if y.group().id() != want.id() {
        return Err(Error::GroupMismatch(format!("expected an element of B({})", want.name())));
    }
    Ok(())
}

/// `Ind_H^G y` for `y` over the group of `g.subgroup_group(h)`.
pub fn induce(g: &Arc<Group>, h: &Bits, y: &BurnsideElt) -> Result<BurnsideElt> {
    let sub = g.subgroup_group(h)?;
    check_group(y, &sub.group)?;
    let lat = g.lattice();
    let mut r = BurnsideElt::zero(g);
    for (k, c) in y.terms() {
        let l: Bits = k.iter().map(|z| sub.lift[z]).collect();
        r.add_term(lat.canonical(&l).expect("image of a subgroup"), c.clone());
    }
    Ok(r)
}

/// `Inf_{G/N}^G y` for `y` over `g.quotient(n)`.
pub fn inflate(g: &Arc<Group>, n: &Bits, y: &BurnsideElt) -> Result<BurnsideElt> {
    let q = g.quotient(n)?;
    check_group(y, &q.group)?;
    let lat = g.lattice();
    let mut r = BurnsideElt::zero(g);
    for (k, c) in y.terms() {
        let l: Bits = (0..g.order()).filter(|&z| k.contains(q.proj[z])).collect();
        r.add_term(lat.canonical(&l).expect("preimage of a subgroup"), c.clone());
    }
    Ok(r)
}

/// `Def_{G/N}^G x`, over `g.quotient(n)`.
pub fn deflate(x: &BurnsideElt, n: &Bits) -> Result<BurnsideElt> {
    let q = x.group().quotient(n)?;
    let ql = q.group.lattice();
    let mut r = BurnsideElt::zero(&q.group);
    for (k, c) in x.terms() {
        let l: Bits = k.iter().map(|z| q.proj[z]).collect();
        r.add_term(ql.canonical(&l).expect("image of a subgroup"), c.clone());
    }
    Ok(r)
}

/// `[G/H][G/K] = Σ_{HgK} [G/(H ∩ gKg⁻¹)]`, as (canonical rep, multiplicity).
pub fn basis_product(g: &Group, h: &Bits, k: &Bits) -> Vec<(Bits, usize)> {
    let lat = g.lattice();
    let mut seen = Bits::empty();
    let mut out: BTreeMap<Bits, usize> = BTreeMap::new();
    for x in 0..g.order() {
        if seen.contains(x) {
            continue;
        }
        for a in h.iter() {
            for b in k.iter() {
                seen.insert(g.mul(g.mul(a, x), b));
            }
        }
        let l = h.intersection(&g.conjugate(x, k));
        *out.entry(lat.canonical(&l).expect("intersection of subgroups")).or_default() += 1;
    }
    out.into_iter().collect()
}

/// Number of fixed points of `k` on `G/H`: `#{gH : k ⊆ gHg⁻¹}`.
pub fn mark(g: &Group, k: &Bits, h: &Bits) -> usize {
    let hits = (0..g.order()).filter(|&x| k.iter().all(|y| h.contains(g.conj(g.inv(x), y)))).count();
    hits / h.len()
}

/// The primitive idempotent of `QB(G)` attached to the class of `h`:
/// `(1/|N_G(H)|) Σ_{K<=H} |K| μ(K,H) [G/K]`.
pub fn idempotent_e(g: &Arc<Group>, h: &Bits) -> Result<BurnsideElt> {
    let lat = g.lattice();
    lat.index_of(h).ok_or(Error::NotASubgroup)?;
    let mobius = mobius_subgroups(g);
    let norm = qi(g.normalizer(h).len() as i64);
    let mut r = BurnsideElt::zero(g);
    for k in lat.subgroups_of(h) {
        let m = mobius.mu(k, h);
        if m != 0 {
            let rep = lat.canonical(k).unwrap();
            r.add_term(rep, qi(k.len() as i64 * m) / &norm);
        }
    }
    Ok(r)
}

/// `m_{G,N} = (1/|G|) Σ_{X : XN = G} |X| μ(X,G)`.
pub fn m_scalar(g: &Group, n: &Bits) -> Result<Q> {
    if !g.is_subgroup(n) {
        return Err(Error::NotASubgroup);
    }
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let whole = g.whole();
    let mut s = Q::zero();
    for x in &g.lattice().all {
        if g.product_set(x, n).len() == g.order() {
            s += qi(x.len() as i64 * mu_subgroups(g, x, &whole));
        }
    }
    Ok(s / qi(g.order() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;
    use crate::rational::q;

    #[test]
    fn unit_and_small_products() {
        let c2 = get("C2").unwrap();
        let one = BurnsideElt::one(&c2);
        let free = BurnsideElt::basis(&c2, &c2.trivial()).unwrap();
        assert_eq!(one.mul(&free).unwrap(), free);
        assert_eq!(free.mul(&free).unwrap(), free.scale(&qi(2)));
    }

    #[test]
    fn s3_c3_square() {
        // independent oracle: marks of [S3/C3] are (2,0,2,0) on 1, C2, C3, S3,
        // so its square has marks (4,0,4,0) = 2 [S3/C3]
        let s3 = get("S3").unwrap();
        let c3 = s3.lattice().all.iter().find(|h| h.len() == 3).copied().unwrap();
        let x = BurnsideElt::basis(&s3, &c3).unwrap();
        assert_eq!(x.mul(&x).unwrap(), x.scale(&qi(2)));
        let marks: Vec<Q> = x.marks();
        assert_eq!(marks, vec![qi(2), qi(0), qi(2), qi(0)]);
    }

    #[test]
    fn marks_examples() {
        let d8 = get("D8").unwrap();
        assert!(BurnsideElt::one(&d8).marks().iter().all(|m| *m == qi(1)));
        let free = BurnsideElt::basis(&d8, &d8.trivial()).unwrap().marks();
        assert_eq!(free[0], qi(8));
        assert!(free[1..].iter().all(|m| m.is_zero()));
        let z = d8.center();
        let mz = BurnsideElt::basis(&d8, &z).unwrap().marks();
        let zi = d8.lattice().class_index(&z).unwrap();
        for (i, m) in mz.iter().enumerate() {
            let want = if i == 0 || i == zi { 4 } else { 0 };
            assert_eq!(*m, qi(want));
        }
    }

    #[test]
    fn idempotents() {
        let one = get("1").unwrap();
        assert_eq!(idempotent_e(&one, &one.whole()).unwrap(), BurnsideElt::one(&one));
        let c2 = get("C2").unwrap();
        let e = idempotent_e(&c2, &c2.whole()).unwrap();
        let want = BurnsideElt::one(&c2)
            .sub(&BurnsideElt::basis(&c2, &c2.trivial()).unwrap().scale(&q(1, 2)))
            .unwrap();
        assert_eq!(e, want);
        for name in ["S3", "D8", "A4"] {
            let g = get(name).unwrap();
            let mut sum = BurnsideElt::zero(&g);
            for (i, cls) in g.lattice().classes.iter().enumerate() {
                let e = idempotent_e(&g, &cls.rep).unwrap();
                let marks = e.marks();
                for (j, m) in marks.iter().enumerate() {
                    assert_eq!(*m, qi((i == j) as i64));
                }
                sum = sum.add(&e).unwrap();
            }
            assert_eq!(sum, BurnsideElt::one(&g));
        }
    }

    #[test]
    fn m_scalars() {
        let c2 = get("C2").unwrap();
        assert_eq!(m_scalar(&c2, &c2.whole()).unwrap(), q(1, 2));
        assert_eq!(m_scalar(&c2, &c2.trivial()).unwrap(), qi(1));
        let q8 = get("Q8").unwrap();
        assert_eq!(m_scalar(&q8, &q8.frattini()).unwrap(), qi(1));
        let s3 = get("S3").unwrap();
        let c2 = s3.lattice().all[1];
        assert_eq!(m_scalar(&s3, &c2).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn group_mismatch() {
        let a = BurnsideElt::one(&get("C2").unwrap());
        let b = BurnsideElt::one(&get("C3").unwrap());
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn restriction_and_friends() {
        let g = get("C4").unwrap();
        let c2 = g.lattice().all[1];
        let free = BurnsideElt::basis(&g, &g.trivial()).unwrap();
        let r = restrict(&free, &c2).unwrap();
        let h = r.group().clone();
        assert_eq!(r, BurnsideElt::basis(&h, &h.trivial()).unwrap().scale(&qi(2)));
        assert_eq!(induce(&g, &c2, &BurnsideElt::one(&h)).unwrap(), BurnsideElt::basis(&g, &c2).unwrap());
        let d = deflate(&free, &c2).unwrap();
        let q = d.group().clone();
        assert_eq!(d, BurnsideElt::basis(&q, &q.trivial()).unwrap());
        assert_eq!(inflate(&g, &c2, &d).unwrap(), BurnsideElt::basis(&g, &c2).unwrap());
        assert!(induce(&g, &c2, &free).is_err());
    }
}
