//! Finite groups stored as explicit multiplication tables.

mod iso;
mod lattice;

pub use iso::{
    all_isomorphisms, random_isomorphism, automorphisms, automorphisms_capped, is_isomorphic, is_nilpotent, isomorphic,
    AutomorphismCounts, Invariants, DEFAULT_AUT_CAP,
};
pub use lattice::{Characteristic, Lattice, SubgroupClass};

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use parking_lot::Mutex;

use crate::bits::{Bits, MAX_BITS};
use crate::error::{Error, Result};
use crate::poset::PosetMobius;

/// Default cap on group orders.
pub const DEFAULT_CAP: usize = MAX_BITS;

/// Members of a subgroup of some group, as a bitset over its element indices.
pub type Subgroup = Bits;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Generators { degree: usize, generators: Vec<Vec<usize>> },
    Table,
    Product(String, String),
    Quotient { parent: String, top: Vec<usize>, bottom: Vec<usize> },
}

#[derive(Default)]
pub(crate) struct GroupCache {
    pub lattice: OnceLock<Lattice>,
    pub characteristic: OnceLock<Characteristic>,
    pub mobius: OnceLock<PosetMobius<Bits>>,
    pub invariants: OnceLock<Invariants>,
    pub frattini_of: Mutex<HashMap<Bits, Bits>>,
    pub normal_mobius: Mutex<HashMap<Bits, Arc<PosetMobius<Bits>>>>,
    pub sections: Mutex<HashMap<(Bits, Bits), Arc<Quotient>>>,
}

/// A finite group of order at most 512 with elements `0..order`; `0` is the
/// identity.
pub struct Group {
    id: u64,
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    elt_order: Vec<u32>,
    gens: Vec<usize>,
    provenance: Provenance,
    pub(crate) cache: GroupCache,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// A homomorphism given by the image of every element of its domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupMap {
    pub images: Vec<usize>,
}

impl GroupMap {
    pub fn identity(n: usize) -> Self {
        GroupMap { images: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupMap) -> GroupMap {
        GroupMap { images: first.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn is_homomorphism(&self, dom: &Group, cod: &Group) -> bool {
        if self.images.len() != dom.order() || self.images.iter().any(|&y| y >= cod.order()) {
            return false;
        }
        if self.images[0] != 0 {
            return false;
        }
        (0..dom.order()).all(|x| {
            (0..dom.order()).all(|y| self.images[dom.mul(x, y)] == cod.mul(self.images[x], self.images[y]))
        })
    }

    pub fn is_bijective(&self, cod_order: usize) -> bool {
        self.images.len() == cod_order && Bits::from_indices(self.images.iter().copied()).len() == cod_order
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        let mut inv = vec![usize::MAX; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            if y >= inv.len() || inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(GroupMap { images: inv })
    }

    pub fn image_of(&self, set: &Bits) -> Bits {
        set.iter().map(|x| self.images[x]).collect()
    }

    pub fn kernel(&self) -> Bits {
        (0..self.images.len()).filter(|&x| self.images[x] == 0).collect()
    }

    pub fn preimage(&self, set: &Bits) -> Bits {
        (0..self.images.len()).filter(|&x| set.contains(self.images[x])).collect()
    }
}

/// The group `T/S` for a section `(T, S)` of a parent group.
#[derive(Debug)]
pub struct Quotient {
    pub group: Arc<Group>,
    /// Image in `T/S` of each parent element of `T`; `usize::MAX` outside `T`.
    pub proj: Vec<usize>,
    /// Minimal coset representative in the parent of each element of `T/S`.
    pub lift: Vec<usize>,
    pub top: Bits,
    pub bottom: Bits,
}

impl Quotient {
    /// The projection as a [`GroupMap`] on the parent; only meaningful when
    /// the top of the section is the whole parent group.
    pub fn projection_map(&self) -> GroupMap {
        GroupMap { images: self.proj.clone() }
    }

    pub fn project(&self, x: usize) -> usize {
        self.proj[x]
    }
}

/// `G x H` with its canonical injections and projections. The pair `(g, h)`
/// has index `g * |H| + h`.
#[derive(Debug)]
pub struct DirectProduct {
    pub group: Arc<Group>,
    pub inj1: GroupMap,
    pub inj2: GroupMap,
    pub proj1: GroupMap,
    pub proj2: GroupMap,
}

fn compose_perm(a: &[u16], b: &[u16]) -> Vec<u16> {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

impl Group {
    /// Generates the group spanned by one-line permutations of `0..degree`.
    pub fn from_permutations(name: &str, degree: usize, generators: &[Vec<usize>]) -> Result<Arc<Group>> {
        Self::from_permutations_capped(name, degree, generators, DEFAULT_CAP)
    }

    pub fn from_permutations_capped(
        name: &str,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Arc<Group>> {
        let cap = cap.min(MAX_BITS);
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut gens: Vec<Vec<u16>> = Vec::new();
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "expected degree {degree}, found {}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPermutation(format!("{g:?} is not a bijection")));
                }
                seen[x] = true;
            }
            gens.push(g.iter().map(|&x| x as u16).collect());
        }
        let id: Vec<u16> = (0..degree as u16).collect();
        gens.sort();
        gens.dedup();
        gens.retain(|g| *g != id);

        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<u16>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = compose_perm(&elements[x], g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose_perm(&elements[a], &elements[b])] as u16;
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        let prov = Provenance::Generators { degree, generators: generators.to_vec() };
        Ok(Self::from_parts(name, n, mul, labels, prov))
    }

    /// Builds a group from a full multiplication table, validating the group
    /// axioms. Element `0` must be the identity.
    pub fn from_table(name: &str, table: &[Vec<usize>]) -> Result<Arc<Group>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_BITS {
            return Err(Error::GroupTooLarge { cap: MAX_BITS });
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::InvalidTable("element 0 is not a two-sided identity".into()));
        }
        for a in 0..n {
            if Bits::from_indices(table[a].iter().copied()).len() != n
                || Bits::from_indices((0..n).map(|b| table[b][a])).len() != n
            {
                return Err(Error::InvalidTable("not a Latin square (missing inverses)".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mul = table.iter().flatten().map(|&x| x as u16).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::from_parts(name, n, mul, labels, Provenance::Table))
    }

    /// Internal constructor for tables known to satisfy the group axioms.
    pub(crate) fn from_parts(
        name: &str,
        n: usize,
        mul: Vec<u16>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Arc<Group> {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let mut elt_order = vec![1u32; n];
        for a in 1..n {
            let (mut x, mut k) = (a, 1u32);
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elt_order[a] = k;
        }
        let mut g = Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            order: n,
            mul,
            inv,
            labels,
            elt_order,
            gens: Vec::new(),
            provenance,
            cache: GroupCache::default(),
        };
        g.gens = g.greedy_generators();
        Arc::new(g)
    }

    /// A small generating set: elements of largest order first.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut cand: Vec<usize> = (1..self.order).collect();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.elt_order[x]), x));
        let mut gens = Vec::new();
        let mut current = Bits::singleton(0);
        for x in cand {
            if current.len() == self.order {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elt_order(&self, x: usize) -> usize {
        self.elt_order[x] as usize
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn whole(&self) -> Bits {
        Bits::full(self.order)
    }

    pub fn trivial(&self) -> Bits {
        Bits::singleton(0)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut set = Bits::singleton(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn closure_of_set(&self, set: &Bits) -> Bits {
        let gens: Vec<usize> = set.iter().collect();
        self.closure(&gens)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: &Bits, b: &Bits) -> Bits {
        self.closure_of_set(&a.union(b))
    }

    pub fn is_subgroup(&self, set: &Bits) -> bool {
        if !set.contains(0) || set.iter().any(|x| x >= self.order) {
            return false;
        }
        if self.order % set.len() != 0 {
            return false;
        }
        set.iter().all(|a| set.contains(self.inv(a)) && set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    pub fn conjugate(&self, g: usize, set: &Bits) -> Bits {
        set.iter().map(|x| self.conj(g, x)).collect()
    }

    pub fn normalizer(&self, set: &Bits) -> Bits {
        (0..self.order).filter(|&g| self.conjugate(g, set) == *set).collect()
    }

    /// Whether every element of `by` normalizes `set`.
    pub fn normalizes(&self, by: &Bits, set: &Bits) -> bool {
        by.iter().all(|g| set.iter().all(|x| set.contains(self.conj(g, x))))
    }

    pub fn is_normal(&self, set: &Bits) -> bool {
        self.gens.iter().all(|&g| set.iter().all(|x| set.contains(self.conj(g, x))))
    }

    /// The set `AB`.
    pub fn product_set(&self, a: &Bits, b: &Bits) -> Bits {
        let mut r = Bits::empty();
        for x in a.iter() {
            for y in b.iter() {
                r.insert(self.mul(x, y));
            }
        }
        r
    }

    pub fn centralizer(&self, set: &Bits) -> Bits {
        (0..self.order)
            .filter(|&g| set.iter().all(|x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn center(&self) -> Bits {
        (0..self.order)
            .filter(|&g| self.gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    /// Smallest prime dividing the order and whether the order is a power of it.
    pub fn prime_power(&self) -> Option<usize> {
        let n = self.order;
        if n == 1 {
            return None;
        }
        let p = (2..=n).find(|p| n % p == 0).unwrap();
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    pub fn is_p_group(&self) -> bool {
        self.order == 1 || self.prime_power().is_some()
    }

    /// Validates that `(t, s)` is a section: `s <= t` subgroups with `s`
    /// normalized by `t`.
    pub fn check_section(&self, t: &Bits, s: &Bits) -> Result<()> {
        if !self.is_subgroup(t) || !self.is_subgroup(s) {
            return Err(Error::InvalidSection("not subgroups".into()));
        }
        if !s.is_subset(t) {
            return Err(Error::InvalidSection("S is not contained in T".into()));
        }
        if !self.normalizes(t, s) {
            return Err(Error::InvalidSection("S is not normal in T".into()));
        }
        Ok(())
    }

    /// `N_G(T) ∩ N_G(S)`.
    pub fn normalizer_of_section(&self, t: &Bits, s: &Bits) -> Result<Bits> {
        self.check_section(t, s)?;
        Ok(self.normalizer(t).intersection(&self.normalizer(s)))
    }

    /// The group `T/S`, memoized per section so that repeated requests yield
    /// the same group object.
    pub fn section_group(&self, t: &Bits, s: &Bits) -> Result<Arc<Quotient>> {
        if let Some(q) = self.cache.sections.lock().get(&(*t, *s)) {
            return Ok(q.clone());
        }
        self.check_section(t, s)?;
        let mut coset_of = vec![usize::MAX; self.order];
        let mut lift = Vec::new();
        for x in t.iter() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = lift.len();
            lift.push(x);
            for y in s.iter() {
                coset_of[self.mul(x, y)] = c;
            }
        }
        let m = lift.len();
        let mut mul = vec![0u16; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = coset_of[self.mul(lift[a], lift[b])] as u16;
            }
        }
        let labels = lift.iter().map(|&x| format!("[{}]", self.labels[x])).collect();
        let name = if s.len() == 1 && t.len() == self.order {
            self.name.clone()
        } else {
            format!("{}:{}/{}", self.name, t.len(), s.len())
        };
        let prov = Provenance::Quotient { parent: self.name.clone(), top: t.to_vec(), bottom: s.to_vec() };
        let group = Self::from_parts(&name, m, mul, labels, prov);
        let q = Arc::new(Quotient { group, proj: coset_of, lift, top: *t, bottom: *s });
        Ok(self.cache.sections.lock().entry((*t, *s)).or_insert(q).clone())
    }

    /// `G/N` with its projection.
    pub fn quotient(&self, n: &Bits) -> Result<Arc<Quotient>> {
        if !self.is_subgroup(n) {
            return Err(Error::NotASubgroup);
        }
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        self.section_group(&self.whole(), n)
    }

    /// A subgroup `H` as a group in its own right; `lift` is the embedding.
    pub fn subgroup_group(&self, h: &Bits) -> Result<Arc<Quotient>> {
        self.section_group(h, &self.trivial())
    }
}

/// `G x H`, pairs ordered lexicographically.
pub fn direct_product(g: &Group, h: &Group) -> Result<DirectProduct> {
    direct_product_capped(g, h, DEFAULT_CAP)
}

pub fn direct_product_capped(g: &Group, h: &Group, cap: usize) -> Result<DirectProduct> {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    if n > cap.min(MAX_BITS) {
        return Err(Error::GroupTooLarge { cap: cap.min(MAX_BITS) });
    }
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let (a1, a2) = (a / k, a % k);
        for b in 0..n {
            let (b1, b2) = (b / k, b % k);
            mul[a * n + b] = (g.mul(a1, b1) * k + h.mul(a2, b2)) as u16;
        }
    }
    let labels = (0..n).map(|a| format!("({},{})", g.label(a / k), h.label(a % k))).collect();
    let name = format!("{}x{}", g.name(), h.name());
    let group = Group::from_parts(&name, n, mul, labels, Provenance::Product(g.name().into(), h.name().into()));
    Ok(DirectProduct {
        group,
        inj1: GroupMap { images: (0..m).map(|a| a * k).collect() },
        inj2: GroupMap { images: (0..k).collect() },
        proj1: GroupMap { images: (0..n).map(|a| a / k).collect() },
        proj2: GroupMap { images: (0..n).map(|a| a % k).collect() },
    })
}

fn cycle_notation(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] as usize == i {
            continue;
        }
        out.push('(');
        let mut j = i;
        let mut first = true;
        while !seen[j] {
            seen[j] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&j.to_string());
            first = false;
            j = p[j] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
