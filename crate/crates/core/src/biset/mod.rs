//! Rational double Burnside groups `QB(H,G)`: combinations of transitive
//! `(H,G)`-bisets `[(H×G)/L]`, keyed by conjugacy classes of subgroups `L`
//! of `H×G`, with Mackey composition.

mod goursat;
mod json;
mod standard;

pub use goursat::{q_group, sigma_classes, sigma_synthesized, Goursat};
pub use json::{BisetJson, TermJson};
pub use standard::*;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::{Mutex, RwLock};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{direct_product, Group};
use crate::rational::{qi, to_string, Q};

/// Order above which the full subgroup lattice of `H×G` is not enumerated.
pub const FULL_ENUMERATION_GATE: usize = 144;

static NEXT_SPACE: AtomicU64 = AtomicU64::new(1);

/// Data cached for one conjugacy class of subgroups of `H×G`.
#[derive(Debug)]
pub struct ClassInfo {
    pub rep: Bits,
    pub goursat: Goursat,
    /// `left_fiber[h] = {g : (h,g) in rep}`.
    left_fiber: Vec<Bits>,
    /// `right_fiber[g] = {h : (h,g) in rep}`.
    right_fiber: Vec<Bits>,
}

/// The set of conjugacy classes of subgroups of `left × right`, discovered
/// lazily and memoized.
pub struct BisetSpace {
    id: u64,
    pub left: Arc<Group>,
    pub right: Arc<Group>,
    pub ambient: Arc<Group>,
    lookup: DashMap<Bits, u32>,
    classes: RwLock<Vec<Arc<ClassInfo>>>,
    create: Mutex<()>,
    opposite: DashMap<u32, u32>,
}

impl fmt::Debug for BisetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})", self.left.name(), self.right.name())
    }
}

static SPACES: Lazy<DashMap<(u64, u64), Arc<BisetSpace>>> = Lazy::new(DashMap::new);

type ProductKey = (u64, u64, u32, u32);
static PRODUCTS: Lazy<DashMap<ProductKey, Arc<Vec<(u32, u32)>>>> = Lazy::new(DashMap::new);

/// The registry entry for `(left, right)`-bisets.
pub fn space(left: &Arc<Group>, right: &Arc<Group>) -> Result<Arc<BisetSpace>> {
    let key = (left.id(), right.id());
    if let Some(s) = SPACES.get(&key) {
        return Ok(s.clone());
    }
    let ambient = direct_product(left, right)?.group;
    let s = Arc::new(BisetSpace {
        id: NEXT_SPACE.fetch_add(1, Ordering::Relaxed),
        left: left.clone(),
        right: right.clone(),
        ambient,
        lookup: DashMap::new(),
        classes: RwLock::new(Vec::new()),
        create: Mutex::new(()),
        opposite: DashMap::new(),
    });
    Ok(SPACES.entry(key).or_insert(s).clone())
}

impl BisetSpace {
    #[inline]
    pub fn pair(&self, h: usize, g: usize) -> usize {
        h * self.right.order() + g
    }

    #[inline]
    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }

    pub fn class(&self, id: u32) -> Arc<ClassInfo> {
        self.classes.read()[id as usize].clone()
    }

    pub fn num_known_classes(&self) -> usize {
        self.classes.read().len()
    }

    /// The class id of a subgroup of the ambient product. The subgroup is
    /// trusted to be a subgroup.
    pub fn class_of(&self, l: &Bits) -> u32 {
        if let Some(c) = self.lookup.get(l) {
            return *c;
        }
        let orbit = self.orbit(l);
        self.register(orbit)
    }

    /// Like [`class_of`](Self::class_of) but validates the input.
    pub fn checked_class_of(&self, l: &Bits) -> Result<u32> {
        if !self.ambient.is_subgroup(l) {
            return Err(Error::NotASubgroup);
        }
        Ok(self.class_of(l))
    }

    /// Minimal member of the conjugacy class of `l`.
    pub fn canonical(&self, l: &Bits) -> Bits {
        self.class(self.class_of(l)).rep
    }

    fn orbit(&self, l: &Bits) -> Vec<Bits> {
        let a = &self.ambient;
        let mut orbit = vec![*l];
        let mut seen = std::collections::HashSet::from([*l]);
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i];
            for &x in a.generators() {
                let c = a.conjugate(x, &cur);
                if seen.insert(c) {
                    orbit.push(c);
                }
            }
            i += 1;
        }
        orbit
    }

    fn register(&self, mut orbit: Vec<Bits>) -> u32 {
        let _guard = self.create.lock();
        if let Some(c) = self.lookup.get(&orbit[0]) {
            return *c;
        }
        orbit.sort();
        let rep = orbit[0];
        let (nl, nr) = (self.left.order(), self.right.order());
        let mut left_fiber = vec![Bits::empty(); nl];
        let mut right_fiber = vec![Bits::empty(); nr];
        for x in rep.iter() {
            let (h, g) = self.unpair(x);
            left_fiber[h].insert(g);
            right_fiber[g].insert(h);
        }
        let goursat = Goursat::from_fibers(&left_fiber, &right_fiber);
        let info = Arc::new(ClassInfo { rep, goursat, left_fiber, right_fiber });
        let mut classes = self.classes.write();
        let id = classes.len() as u32;
        classes.push(info);
        drop(classes);
        for m in orbit {
            self.lookup.insert(m, id);
        }
        id
    }

    /// Every class of subgroups of the ambient product, in lattice order.
    /// Enumerates the full subgroup lattice, so it is gated by ambient order.
    pub fn all_classes(&self, gate: usize) -> Result<Vec<u32>> {
        if self.ambient.order() > gate {
            return Err(Error::GateExceeded(format!(
                "full enumeration of subgroups of {} (order {}) exceeds gate {gate}",
                self.ambient.name(),
                self.ambient.order()
            )));
        }
        let lat = self.ambient.lattice();
        Ok(lat
            .classes
            .iter()
            .map(|c| match self.lookup.get(&c.rep) {
                Some(id) => *id,
                None => self.register(c.members.clone()),
            })
            .collect())
    }

    /// Class of the transposed subgroup in the opposite space.
    fn opposite_class(&self, op: &BisetSpace, id: u32) -> u32 {
        if let Some(c) = self.opposite.get(&id) {
            return *c;
        }
        let rep = self.class(id).rep;
        let t: Bits = rep
            .iter()
            .map(|x| {
                let (h, g) = self.unpair(x);
                op.pair(g, h)
            })
            .collect();
        let c = op.class_of(&t);
        self.opposite.insert(id, c);
        c
    }
}

/// `L * M = {(k,g) : (k,h) in L, (h,g) in M for some h}` for subgroups given
/// by class info, with `M` first conjugated by `(h,1)`.
fn star_conj(dst: &BisetSpace, l: &ClassInfo, m: &ClassInfo, mid: &Group, h: usize) -> Bits {
    let hinv = mid.inv(h);
    let mut out = Bits::empty();
    for x in 0..mid.order() {
        let lx = &l.right_fiber[x];
        if lx.is_empty() {
            continue;
        }
        // (x, g) in ^{(h,1)}M  iff  (h⁻¹xh, g) in M
        let my = &m.left_fiber[mid.mul(mid.mul(hinv, x), h)];
        if my.is_empty() {
            continue;
        }
        for k in lx.iter() {
            for g in my.iter() {
                out.insert(dst.pair(k, g));
            }
        }
    }
    out
}

/// `L * M` for `L <= K×H` and `M <= H×G` (plain set construction).
pub fn star(outer: &BisetSpace, l: &Bits, inner: &BisetSpace, m: &Bits) -> Result<Bits> {
    if outer.right.id() != inner.left.id() {
        return Err(Error::GroupMismatch(format!("cannot form {outer:?} * {inner:?}")));
    }
    let dst = space(&outer.left, &inner.right)?;
    let mut out = Bits::empty();
    for x in l.iter() {
        let (k, h) = outer.unpair(x);
        for y in m.iter() {
            let (h2, g) = inner.unpair(y);
            if h == h2 {
                out.insert(dst.pair(k, g));
            }
        }
    }
    Ok(out)
}

/// `[(K×H)/L] ∘_H [(H×G)/M]` as multiplicities of classes of `K×G`.
fn basis_compose(
    outer: &BisetSpace,
    inner: &BisetSpace,
    dst: &BisetSpace,
    l: u32,
    m: u32,
    reverse: bool,
) -> Vec<(u32, u32)> {
    let (li, mi) = (outer.class(l), inner.class(m));
    let mid = &inner.left;
    let (a, b) = (li.goursat.p2, mi.goursat.p1);
    let mut seen = Bits::empty();
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    let mut order: Vec<usize> = (0..mid.order()).collect();
    if reverse {
        order.reverse();
    }
    for h in order {
        if seen.contains(h) {
            continue;
        }
        for x in a.iter() {
            let xh = mid.mul(x, h);
            for y in b.iter() {
                seen.insert(mid.mul(xh, y));
            }
        }
        let s = star_conj(dst, &li, &mi, mid, h);
        *acc.entry(dst.class_of(&s)).or_default() += 1;
    }
    acc.into_iter().collect()
}

/// An element of `QB(H,G)`, the rational span of transitive `(H,G)`-bisets.
/// `H` is the target (left) group and `G` the source (right) group.
#[derive(Clone)]
pub struct BisetElt {
    space: Arc<BisetSpace>,
    terms: BTreeMap<u32, Q>,
}

impl PartialEq for BisetElt {
    fn eq(&self, other: &Self) -> bool {
        self.space.id == other.space.id && self.terms == other.terms
    }
}

impl Eq for BisetElt {}

impl fmt::Debug for BisetElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BisetElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.sorted_terms().iter().map(|(l, c)| format!("{}*{:?}", to_string(c), l)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BisetElt {
    pub fn zero(left: &Arc<Group>, right: &Arc<Group>) -> Result<Self> {
        Ok(Self::zero_in(&space(left, right)?))
    }

    pub fn zero_in(space: &Arc<BisetSpace>) -> Self {
        BisetElt { space: space.clone(), terms: BTreeMap::new() }
    }

    /// `[(H×G)/L]` for a subgroup `L` of `left × right` (pairs `(h,g)` with
    /// index `h·|G| + g`).
    pub fn transitive(left: &Arc<Group>, right: &Arc<Group>, l: &Bits) -> Result<Self> {
        let s = space(left, right)?;
        let c = s.checked_class_of(l)?;
        Ok(Self::from_class(&s, c))
    }

    pub(crate) fn from_class(space: &Arc<BisetSpace>, c: u32) -> Self {
        BisetElt { space: space.clone(), terms: BTreeMap::from([(c, qi(1))]) }
    }

    /// Transitive biset of the subgroup given as a list of pairs.
    pub fn from_pairs(left: &Arc<Group>, right: &Arc<Group>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let s = space(left, right)?;
        let l: Bits = pairs.into_iter().map(|(h, g)| s.pair(h, g)).collect();
        Self::transitive(left, right, &l)
    }

    pub fn space(&self) -> &Arc<BisetSpace> {
        &self.space
    }

    /// Target group `H`.
    pub fn dst(&self) -> &Arc<Group> {
        &self.space.left
    }

    /// Source group `G`.
    pub fn src(&self) -> &Arc<Group> {
        &self.space.right
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (canonical representative, coefficient), sorted by representative.
    pub fn sorted_terms(&self) -> Vec<(Bits, Q)> {
        let mut v: Vec<(Bits, Q)> = self.terms.iter().map(|(c, q)| (self.space.class(*c).rep, q.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn class_terms(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.terms.iter().map(|(c, q)| (*c, q))
    }

    pub fn class_info(&self, c: u32) -> Arc<ClassInfo> {
        self.space.class(c)
    }

    pub fn coeff(&self, l: &Bits) -> Q {
        let c = self.space.class_of(l);
        self.terms.get(&c).cloned().unwrap_or_else(Q::zero)
    }

    pub(crate) fn add_class(&mut self, c: u32, q: Q) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(c).or_insert_with(Q::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    /// Adds `q·[(H×G)/L]`.
    pub fn add_subgroup(&mut self, l: &Bits, q: Q) {
        let c = self.space.class_of(l);
        self.add_class(c, q);
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.space.id != other.space.id {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", self.space, other.space)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (c, q) in &other.terms {
            r.add_class(*c, q.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero_in(&self.space);
        if s.is_zero() {
            return r;
        }
        for (c, q) in &self.terms {
            r.terms.insert(*c, q * s);
        }
        r
    }

    pub fn sum<'a>(space: &Arc<BisetSpace>, items: impl IntoIterator<Item = &'a BisetElt>) -> Result<Self> {
        let mut r = Self::zero_in(space);
        for x in items {
            r.check_same(x)?;
            for (c, q) in &x.terms {
                r.add_class(*c, q.clone());
            }
        }
        Ok(r)
    }

    /// `self ∘ inner`: `self` in `B(K,H)`, `inner` in `B(H,G)`, result in `B(K,G)`.
    pub fn compose(&self, inner: &BisetElt) -> Result<BisetElt> {
        self.compose_impl(inner, false)
    }

    /// Composition with double coset representatives scanned in reverse
    /// index order and no memoization; the result must agree with
    /// [`compose`](Self::compose).
    pub fn compose_reversed(&self, inner: &BisetElt) -> Result<BisetElt> {
        self.compose_impl(inner, true)
    }

    fn compose_impl(&self, inner: &BisetElt, reverse: bool) -> Result<BisetElt> {
        if self.src().id() != inner.dst().id() {
            return Err(Error::GroupMismatch(format!(
                "cannot compose {:?} after {:?}",
                self.space, inner.space
            )));
        }
        let dst = space(self.dst(), inner.src())?;
        let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
        for (&l, a) in &self.terms {
            for (&m, b) in &inner.terms {
                let prod = if reverse {
                    Arc::new(basis_compose(&self.space, &inner.space, &dst, l, m, true))
                } else {
                    let key = (self.space.id, inner.space.id, l, m);
                    match PRODUCTS.get(&key) {
                        Some(p) => p.clone(),
                        None => {
                            let p = Arc::new(basis_compose(&self.space, &inner.space, &dst, l, m, false));
                            PRODUCTS.insert(key, p.clone());
                            p
                        }
                    }
                };
                let ab = a * b;
                for &(c, n) in prod.iter() {
                    *acc.entry(c).or_insert_with(Q::zero) += &ab * qi(n as i64);
                }
            }
        }
        acc.retain(|_, q| !q.is_zero());
        Ok(BisetElt { space: dst, terms: acc })
    }

    /// The opposite biset, in `B(G,H)`.
    pub fn opposite(&self) -> BisetElt {
        let op = space(self.src(), self.dst()).expect("opposite of an existing space fits");
        let mut r = BisetElt::zero_in(&op);
        for (c, q) in &self.terms {
            r.add_class(self.space.opposite_class(&op, *c), q.clone());
        }
        r
    }
}

impl BisetSpace {
    /// Id used to key caches.
    pub fn id(&self) -> u64 {
        self.id
    }
}

#[cfg(test)]
mod tests;
