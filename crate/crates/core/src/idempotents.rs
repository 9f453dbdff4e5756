//! Minimal sections, the algebra `ẽ B(G,G) ẽ` with its `Y_L` basis, the
//! idempotents `φ_N^G`, the morphisms `u`/`v`, the idempotents `ε_{T,S}^G` and
//! the central idempotents `b_L^P`.

use std::collections::BTreeSet;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atoric::{atoric_quotient, is_atoric};
use crate::biset::{
    conjugation_iso, defres, delta, delta_m, indinf, inf, def, sigma_classes, sigma_synthesized, space,
    tilde, BisetElt, FULL_ENUMERATION_GATE,
};
use crate::bits::Bits;
use crate::burnside::idempotent_e;
use crate::error::{Error, Result};
use crate::group::{isomorphic, Group};
use crate::poset::{mobius_normals_in, mu_subgroups};
use crate::rational::{qi, Q};

/// One conjugacy class of minimal sections `(T,S)`, `S <= Φ(T)`.
#[derive(Debug, Clone)]
pub struct SectionClass {
    pub t: Bits,
    pub s: Bits,
    pub orbit: Vec<(Bits, Bits)>,
    /// `N_G(T,S) = N_G(T) ∩ N_G(S)`.
    pub normalizer: Bits,
}

impl SectionClass {
    /// `|N_G(T,S) : T|`.
    pub fn index(&self) -> usize {
        self.normalizer.len() / self.t.len()
    }
}

#[derive(Debug)]
pub struct MinimalSections {
    pub sections: Vec<(Bits, Bits)>,
    pub classes: Vec<SectionClass>,
}

impl MinimalSections {
    /// Index of the class containing `(t, s)`.
    pub fn class_of(&self, t: &Bits, s: &Bits) -> Option<usize> {
        self.classes.iter().position(|c| c.orbit.iter().any(|(a, b)| a == t && b == s))
    }
}

static SECTIONS: Lazy<DashMap<u64, Arc<MinimalSections>>> = Lazy::new(DashMap::new);

pub fn minimal_sections(g: &Group) -> Arc<MinimalSections> {
    if let Some(m) = SECTIONS.get(&g.id()) {
        return m.clone();
    }
    let lat = g.lattice();
    let mut sections = Vec::new();
    for t in &lat.all {
        let phi = g.frattini_of(t);
        for s in lat.subgroups_of(&phi) {
            if g.normalizes(t, s) {
                sections.push((*t, *s));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for &(t, s) in &sections {
        if seen.contains(&(t, s)) {
            continue;
        }
        let orbit: BTreeSet<(Bits, Bits)> = (0..g.order()).map(|x| (g.conjugate(x, &t), g.conjugate(x, &s))).collect();
        seen.extend(orbit.iter().copied());
        let normalizer = g.normalizer(&t).intersection(&g.normalizer(&s));
        classes.push(SectionClass { t, s, orbit: orbit.into_iter().collect(), normalizer });
    }
    let m = Arc::new(MinimalSections { sections, classes });
    SECTIONS.entry(g.id()).or_insert(m).clone()
}

static E_TILDE: Lazy<DashMap<u64, BisetElt>> = Lazy::new(DashMap::new);

/// `ẽ_G^G`, the image of `e_G^G` in `QB(G,G)`.
pub fn e_tilde(g: &Arc<Group>) -> BisetElt {
    if let Some(e) = E_TILDE.get(&g.id()) {
        return e.clone();
    }
    let e = tilde(&idempotent_e(g, &g.whole()).expect("G is a subgroup of itself"));
    E_TILDE.insert(g.id(), e.clone());
    e
}

/// `Y_L = ẽ [(G×G)/L] ẽ`; zero unless both projections of `L` are onto.
pub fn y_elt(g: &Arc<Group>, l: &Bits) -> Result<BisetElt> {
    let sp = space(g, g)?;
    let c = sp.checked_class_of(l)?;
    let gs = sp.class(c).goursat;
    if gs.p1 != g.whole() || gs.p2 != g.whole() {
        return Ok(BisetElt::zero_in(&sp));
    }
    let e = e_tilde(g);
    e.compose(&BisetElt::transitive(g, g, l)?)?.compose(&e)
}

/// Representatives of the classes of `{L <= G×G : p1(L) = p2(L) = G}`:
/// filtered from the full lattice of `G×G` when `|G| <= full_max_order`, built
/// from Goursat data otherwise.
pub fn sigma_reps(g: &Arc<Group>, full_max_order: usize) -> Result<Vec<Bits>> {
    let sp = space(g, g)?;
    let ids = if g.order() <= full_max_order {
        sigma_classes(g, FULL_ENUMERATION_GATE.max(g.order() * g.order()))?
    } else {
        sigma_synthesized::<ChaCha8Rng>(g, None)?
    };
    Ok(ids.into_iter().map(|c| sp.class(c).rep).collect())
}

/// The `Y_L` for `L` ranging over [`sigma_reps`].
pub fn e_basis(g: &Arc<Group>, full_max_order: usize) -> Result<Vec<(Bits, BisetElt)>> {
    sigma_reps(g, full_max_order)?.into_iter().map(|l| Ok((l, y_elt(g, &l)?))).collect()
}

/// A seeded random sample of `count` classes of `Σ(G,G)`.
pub fn sigma_sample(g: &Arc<Group>, count: usize, seed: u64) -> Result<Vec<Bits>> {
    let sp = space(g, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sigma_synthesized(g, Some((&mut rng, count)))?.into_iter().map(|c| sp.class(c).rep).collect())
}

fn check_phi_input(g: &Group, n: &Bits) -> Result<()> {
    if !g.is_subgroup(n) {
        return Err(Error::NotASubgroup);
    }
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    if !n.is_subset(&g.frattini()) {
        return Err(Error::NotInFrattini);
    }
    Ok(())
}

/// `(M, μ_⊴G(N, M))` for normal `M` with `N <= M <= Φ(G)`, nonzero terms only.
fn phi_terms(g: &Group, n: &Bits) -> Vec<(Bits, i64)> {
    let phi = g.frattini();
    let whole = g.whole();
    let mob = mobius_normals_in(g, &whole);
    g.lattice()
        .normals
        .iter()
        .filter(|m| n.is_subset(m) && m.is_subset(&phi))
        .map(|m| (*m, mob.mu(n, m)))
        .filter(|(_, mu)| *mu != 0)
        .collect()
}

static PHI: Lazy<DashMap<(u64, Bits), BisetElt>> = Lazy::new(DashMap::new);

/// `φ_N^G = Σ_{N <= M <= Φ(G), M ⊴ G} μ_⊴G(N,M) Y_{Δ_M(G)}`.
pub fn phi(g: &Arc<Group>, n: &Bits) -> Result<BisetElt> {
    check_phi_input(g, n)?;
    if let Some(p) = PHI.get(&(g.id(), *n)) {
        return Ok(p.clone());
    }
    let sp = space(g, g)?;
    let mut r = BisetElt::zero_in(&sp);
    for (m, mu) in phi_terms(g, n) {
        let y = y_elt(g, &delta_m(g, &m, &g.whole())?)?;
        r = r.add(&y.scale(&qi(mu)))?;
    }
    PHI.insert((g.id(), *n), r.clone());
    Ok(r)
}

/// `φ_1^G`.
pub fn phi_one(g: &Arc<Group>) -> BisetElt {
    phi(g, &g.trivial()).expect("the trivial subgroup lies in the Frattini subgroup")
}

/// `φ_N^G = ẽ ∘ Σ μ_⊴G(N,M) [(G×G)/Δ_M(G)]`.
pub fn phi_one_sided(g: &Arc<Group>, n: &Bits) -> Result<BisetElt> {
    check_phi_input(g, n)?;
    let sp = space(g, g)?;
    let mut r = BisetElt::zero_in(&sp);
    for (m, mu) in phi_terms(g, n) {
        r.add_subgroup(&delta_m(g, &m, &g.whole())?, qi(mu));
    }
    e_tilde(g).compose(&r)
}

/// `φ_1^G = (1/|G|) Σ_{M <= Φ(G) <= X} |X| μ(X,G) μ_⊴G(1,M) [(G×G)/Δ_M(X)]`.
pub fn phi_one_explicit(g: &Arc<Group>) -> Result<BisetElt> {
    let whole = g.whole();
    let phi = g.frattini();
    let sp = space(g, g)?;
    let mut r = BisetElt::zero_in(&sp);
    let order = qi(g.order() as i64);
    for (m, mu_n) in phi_terms(g, &g.trivial()) {
        for x in &g.lattice().all {
            if !phi.is_subset(x) {
                continue;
            }
            let mu = mu_subgroups(g, x, &whole);
            if mu != 0 {
                r.add_subgroup(&delta_m(g, &m, x)?, qi(x.len() as i64 * mu * mu_n) / &order);
            }
        }
    }
    Ok(r)
}

/// `φ_N^G = Inf_{G/N}^G φ_1^{G/N} Def_{G/N}^G`.
pub fn phi_via_inflation(g: &Arc<Group>, n: &Bits) -> Result<BisetElt> {
    check_phi_input(g, n)?;
    let q = g.quotient(n)?;
    inf(g, n)?.compose(&phi_one(&q.group))?.compose(&def(g, n)?)
}

fn check_minimal(g: &Group, t: &Bits, s: &Bits) -> Result<()> {
    g.check_section(t, s)?;
    if !s.is_subset(&g.frattini_of(t)) {
        return Err(Error::NotMinimal);
    }
    Ok(())
}

/// `u_{T,S}^G = Indinf_{T/S}^G φ_1^{T/S}`, in `B(G, T/S)`.
pub fn u(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    check_minimal(g, t, s)?;
    let q = g.section_group(t, s)?;
    indinf(g, t, s)?.compose(&phi_one(&q.group))
}

/// `v_{T,S}^G = φ_1^{T/S} Defres_{T/S}^G`, in `B(T/S, G)`.
pub fn v(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    check_minimal(g, t, s)?;
    let q = g.section_group(t, s)?;
    phi_one(&q.group).compose(&defres(g, t, s)?)
}

/// Representatives of `N_G(T,S)/T`.
pub fn normalizer_transversal(g: &Group, t: &Bits, s: &Bits) -> Result<Vec<usize>> {
    let n = g.normalizer_of_section(t, s)?;
    let mut seen = Bits::empty();
    let mut reps = Vec::new();
    for x in n.iter() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for y in t.iter() {
            seen.insert(g.mul(x, y));
        }
    }
    Ok(reps)
}

/// `φ_1^{T/S} Σ_{g in N_G(T,S)/T} Iso(c_g)`, the predicted value of `v ∘ u`.
pub fn u_v_prediction(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    check_minimal(g, t, s)?;
    let q = g.section_group(t, s)?;
    let sp = space(&q.group, &q.group)?;
    let mut acc = BisetElt::zero_in(&sp);
    for x in normalizer_transversal(g, t, s)? {
        acc = acc.add(&conjugation_iso(g, t, s, x)?)?;
    }
    phi_one(&q.group).compose(&acc)
}

static EPSILON: Lazy<DashMap<(u64, Bits, Bits), BisetElt>> = Lazy::new(DashMap::new);

/// `ε_{T,S}^G = (1/|N_G(T,S)|) Σ |X| μ(X,T) μ_⊴T(S,M) [(G×G)/Δ_M(X)]`, the
/// sum over `S <= M <= Φ(T) <= X <= T` with `M ⊴ T`.
pub fn epsilon(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    check_minimal(g, t, s)?;
    if let Some(e) = EPSILON.get(&(g.id(), *t, *s)) {
        return Ok(e.clone());
    }
    let phi = g.frattini_of(t);
    let norm = qi(g.normalizer_of_section(t, s)?.len() as i64);
    let mob = mobius_normals_in(g, t);
    let lat = g.lattice();
    let sp = space(g, g)?;
    let mut r = BisetElt::zero_in(&sp);
    for m in lat.subgroups_of(&phi) {
        if !s.is_subset(m) || !g.normalizes(t, m) {
            continue;
        }
        let mu_m = mob.mu(s, m);
        if mu_m == 0 {
            continue;
        }
        for x in lat.subgroups_of(t) {
            if !phi.is_subset(x) {
                continue;
            }
            let mu_x = mu_subgroups(g, x, t);
            if mu_x != 0 {
                r.add_subgroup(&delta_m(g, m, x)?, qi(x.len() as i64 * mu_x * mu_m) / &norm);
            }
        }
    }
    EPSILON.insert((g.id(), *t, *s), r.clone());
    Ok(r)
}

/// `(1/|N_G(T,S):T|) u_{T,S}^G v_{T,S}^G`.
pub fn epsilon_via_uv(g: &Arc<Group>, t: &Bits, s: &Bits) -> Result<BisetElt> {
    let idx = qi((g.normalizer_of_section(t, s)?.len() / t.len()) as i64);
    Ok(u(g, t, s)?.compose(&v(g, t, s)?)?.scale(&(Q::from_integer(1.into()) / idx)))
}

/// One `ε` per class of minimal sections, in class order.
pub fn epsilon_system(g: &Arc<Group>) -> Result<Vec<(SectionClass, BisetElt)>> {
    minimal_sections(g).classes.iter().map(|c| Ok((c.clone(), epsilon(g, &c.t, &c.s)?))).collect()
}

/// Outcome of checking that a family is a complete system of orthogonal
/// idempotents of a given unit.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SystemReport {
    pub size: usize,
    pub non_idempotent: Vec<usize>,
    pub non_orthogonal: Vec<(usize, usize)>,
    pub sums_to_unit: bool,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.non_idempotent.is_empty() && self.non_orthogonal.is_empty() && self.sums_to_unit
    }
}

/// Checks `x_i x_j = δ_ij x_i` and `Σ x_i = unit`. Pairs are composed in
/// parallel.
pub fn check_system(items: &[BisetElt], unit: &BisetElt) -> Result<SystemReport> {
    use rayon::prelude::*;
    let n = items.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let bad: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = items[i].compose(&items[j])?;
            let ok = if i == j { p == items[i] } else { p.is_zero() };
            Ok((!ok).then_some((i, j)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut report = SystemReport { size: n, ..Default::default() };
    for (i, j) in bad {
        if i == j {
            report.non_idempotent.push(i);
        } else {
            report.non_orthogonal.push((i, j));
        }
    }
    report.sums_to_unit = &BisetElt::sum(unit.space(), items)? == unit;
    Ok(report)
}

/// The `φ_N^G` for normal `N <= Φ(G)`, in lattice order.
pub fn phi_system(g: &Arc<Group>) -> Result<Vec<(Bits, BisetElt)>> {
    let phi_g = g.frattini();
    g.lattice()
        .normals
        .iter()
        .filter(|n| n.is_subset(&phi_g))
        .map(|n| Ok((*n, phi(g, n)?)))
        .collect()
}

/// Indices of the minimal-section classes of `P` whose quotient `T/S` has
/// atoric quotient isomorphic to `L`.
pub fn classes_with_atoric_quotient(p: &Arc<Group>, l: &Group) -> Result<Vec<usize>> {
    let ms = minimal_sections(p);
    let mut out = Vec::new();
    for (i, c) in ms.classes.iter().enumerate() {
        let q = p.section_group(&c.t, &c.s)?;
        if isomorphic(atoric_quotient(&q.group)?.group(), l) {
            out.push(i);
        }
    }
    Ok(out)
}

/// `b_L^P = Σ ε_{T,S}^P` over classes with `(T/S)^@ ≅ L`.
pub fn b_l(p: &Arc<Group>, l: &Group) -> Result<BisetElt> {
    if !p.is_p_group() {
        return Err(Error::NotPGroup(p.order()));
    }
    if !is_atoric(l)? {
        return Err(Error::NotAtoric);
    }
    if p.order() > 1 && l.order() > 1 && p.prime_power() != l.prime_power() {
        return Err(Error::Hypothesis("P and L must be groups for the same prime".into()));
    }
    let ms = minimal_sections(p);
    let sp = space(p, p)?;
    let mut r = BisetElt::zero_in(&sp);
    for i in classes_with_atoric_quotient(p, l)? {
        let c = &ms.classes[i];
        r = r.add(&epsilon(p, &c.t, &c.s)?)?;
    }
    Ok(r)
}

/// Pairwise non-isomorphic atoric quotients `(T/S)^@` over the minimal
/// sections of `P`, i.e. the `L` with `b_L^P` possibly nonzero.
pub fn atoric_types(p: &Arc<Group>) -> Result<Vec<Arc<Group>>> {
    let mut out: Vec<Arc<Group>> = Vec::new();
    for c in &minimal_sections(p).classes {
        let q = p.section_group(&c.t, &c.s)?;
        let at = atoric_quotient(&q.group)?.group().clone();
        if !out.iter().any(|h| isomorphic(h, &at)) {
            out.push(at);
        }
    }
    out.sort_by_key(|h| h.order());
    Ok(out)
}

/// `Y_{(N×1)L}` with `(N×1)L = {(na, b) : n in N, (a,b) in L}`.
pub fn left_translate(g: &Arc<Group>, n: &Bits, l: &Bits) -> Result<Bits> {
    let sp = space(g, g)?;
    let mut out = Bits::empty();
    for x in l.iter() {
        let (a, b) = sp.unpair(x);
        for m in n.iter() {
            out.insert(sp.pair(g.mul(m, a), b));
        }
    }
    if !sp.ambient.is_subgroup(&out) {
        return Err(Error::NotASubgroup);
    }
    Ok(out)
}

/// `Σ_{N ⊴ G, N <= Φ(G)} μ_⊴G(1,N) Y_{(N×1)L}`, the predicted value of
/// `φ_1^G Y_L`.
pub fn phi_y_prediction(g: &Arc<Group>, l: &Bits) -> Result<BisetElt> {
    let sp = space(g, g)?;
    let mut r = BisetElt::zero_in(&sp);
    for (n, mu) in phi_terms(g, &g.trivial()) {
        r = r.add(&y_elt(g, &left_translate(g, &n, l)?)?.scale(&qi(mu)))?;
    }
    Ok(r)
}

/// The right-hand side of the product law for `Y_L Y_M`:
/// `(m_{G,K}/|G|) Σ_{Z} |Z| μ(Z,G) Y_{L * Δ(Z) * M}` with `K = k2(L) ∩ k1(M)`
/// and `Z >= K` ranging over subgroups with `Z k2(L) = Z k1(M) = G`.
pub fn y_product_formula(g: &Arc<Group>, l: &Bits, m: &Bits) -> Result<BisetElt> {
    use crate::biset::{star, Goursat};
    use crate::burnside::m_scalar;
    let sp = space(g, g)?;
    let (gl, gm) = (Goursat::of(&sp, l), Goursat::of(&sp, m));
    let mut r = BisetElt::zero_in(&sp);
    if gl.p1 != g.whole() || gl.p2 != g.whole() || gm.p1 != g.whole() || gm.p2 != g.whole() {
        return Ok(r);
    }
    let k = gl.k2.intersection(&gm.k1);
    let whole = g.whole();
    let scalar = m_scalar(g, &k)? / qi(g.order() as i64);
    for z in &g.lattice().all {
        if !k.is_subset(z) || g.product_set(z, &gl.k2).len() != g.order() || g.product_set(z, &gm.k1).len() != g.order()
        {
            continue;
        }
        let mu = mu_subgroups(g, z, &whole);
        if mu == 0 {
            continue;
        }
        let lz = star(&sp, l, &sp, &delta(g, z)?)?;
        let lzm = star(&sp, &lz, &sp, m)?;
        r = r.add(&y_elt(g, &lzm)?.scale(&(qi(z.len() as i64 * mu) * &scalar)))?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::identity;
    use crate::catalog::get;
    use crate::rational::q;

    #[test]
    fn minimal_section_counts() {
        for (name, want) in [("C2", 2), ("C3", 2), ("C4", 4), ("S3", 4), ("1", 1)] {
            assert_eq!(minimal_sections(&get(name).unwrap()).classes.len(), want, "{name}");
        }
        let c4 = get("C4").unwrap();
        let ms = minimal_sections(&c4);
        let pairs: Vec<(usize, usize)> = ms.classes.iter().map(|c| (c.t.len(), c.s.len())).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 1), (4, 1), (4, 2)]);
    }

    #[test]
    fn y_elements() {
        let g = get("S3").unwrap();
        let whole = g.whole();
        assert_eq!(y_elt(&g, &delta(&g, &whole).unwrap()).unwrap(), e_tilde(&g));
        let c3 = g.lattice().all.iter().find(|h| h.len() == 3).copied().unwrap();
        assert!(y_elt(&g, &delta(&g, &c3).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn phi_routes_agree() {
        for name in ["C2", "C4", "S3", "D8", "Q8", "C2xC2", "C8"] {
            let g = get(name).unwrap();
            for (n, p) in phi_system(&g).unwrap() {
                assert_eq!(p, phi_one_sided(&g, &n).unwrap(), "{name}");
                assert_eq!(p, phi_via_inflation(&g, &n).unwrap(), "{name}");
            }
            assert_eq!(phi_one(&g), phi_one_explicit(&g).unwrap(), "{name}");
        }
    }

    #[test]
    fn phi_system_c4() {
        let g = get("C4").unwrap();
        let items: Vec<BisetElt> = phi_system(&g).unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(items.len(), 2);
        let r = check_system(&items, &e_tilde(&g)).unwrap();
        assert!(r.passed(), "{r:?}");
        let c2 = g.lattice().all[1];
        assert!(matches!(phi(&g, &g.whole()), Err(Error::NotInFrattini)));
        assert!(phi(&g, &c2).is_ok());
    }

    #[test]
    fn epsilon_small() {
        let c2 = get("C2").unwrap();
        let trivial = c2.trivial();
        let e = epsilon(&c2, &trivial, &trivial).unwrap();
        let sp = space(&c2, &c2).unwrap();
        let one = delta(&c2, &trivial).unwrap();
        let mut want = BisetElt::zero_in(&sp);
        want.add_subgroup(&one, q(1, 2));
        assert_eq!(e, want);
        let g = get("1").unwrap();
        assert_eq!(epsilon(&g, &g.whole(), &g.whole()).unwrap(), identity(&g));
    }

    #[test]
    fn epsilon_systems() {
        for name in ["C2", "C4", "S3", "D8", "Q8", "C2xC2"] {
            let g = get(name).unwrap();
            let sys = epsilon_system(&g).unwrap();
            let items: Vec<BisetElt> = sys.iter().map(|x| x.1.clone()).collect();
            let r = check_system(&items, &identity(&g)).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
            for (c, e) in &sys {
                assert_eq!(e, &epsilon_via_uv(&g, &c.t, &c.s).unwrap(), "{name}");
                assert_eq!(v(&g, &c.t, &c.s).unwrap(), u(&g, &c.t, &c.s).unwrap().opposite());
            }
        }
    }

    #[test]
    fn epsilon_at_whole_group_is_phi() {
        let g = get("Q8").unwrap();
        for (n, p) in phi_system(&g).unwrap() {
            assert_eq!(epsilon(&g, &g.whole(), &n).unwrap(), p);
        }
    }

    #[test]
    fn u_and_v() {
        let g = get("D8").unwrap();
        let ms = minimal_sections(&g);
        for (i, a) in ms.classes.iter().enumerate() {
            let ua = u(&g, &a.t, &a.s).unwrap();
            for (j, b) in ms.classes.iter().enumerate() {
                let vb = v(&g, &b.t, &b.s).unwrap();
                if vb.src().id() != ua.dst().id() {
                    continue;
                }
                let p = vb.compose(&ua).unwrap();
                if i == j {
                    assert_eq!(p, u_v_prediction(&g, &a.t, &a.s).unwrap());
                } else if vb.dst().id() == ua.src().id() {
                    assert!(p.is_zero());
                }
            }
        }
        let whole = g.whole();
        // G/1 is a separate group object with the same table as G
        assert_eq!(u(&g, &whole, &g.trivial()).unwrap().sorted_terms(), phi_one(&g).sorted_terms());
        assert!(matches!(u(&g, &g.trivial(), &g.trivial()).map(|_| ()), Ok(())));
        let z = g.center();
        let c2 = g.lattice().all.iter().find(|h| h.len() == 2 && **h != z).copied().unwrap();
        assert!(matches!(u(&g, &c2, &c2), Err(Error::NotMinimal)));
    }

    #[test]
    fn b_l_examples() {
        let c4 = get("C4").unwrap();
        let one = get("1").unwrap();
        let ms = minimal_sections(&c4);
        let idx = classes_with_atoric_quotient(&c4, &c4).unwrap();
        assert_eq!(idx.len(), 1);
        assert_eq!((ms.classes[idx[0]].t.len(), ms.classes[idx[0]].s.len()), (4, 1));
        assert_eq!(classes_with_atoric_quotient(&c4, &one).unwrap().len(), 3);
        let v4 = get("C2xC2").unwrap();
        assert_eq!(b_l(&v4, &one).unwrap(), identity(&v4));
        assert!(b_l(&v4, &c4).unwrap().is_zero());
        assert!(matches!(b_l(&c4, &get("C2").unwrap()), Err(Error::NotAtoric)));
        assert!(matches!(b_l(&get("S3").unwrap(), &one), Err(Error::NotPGroup(6))));
    }

    #[test]
    fn phi_times_y() {
        let g = get("C4").unwrap();
        for l in sigma_reps(&g, 8).unwrap() {
            let lhs = phi_one(&g).compose(&y_elt(&g, &l).unwrap()).unwrap();
            assert_eq!(lhs, phi_y_prediction(&g, &l).unwrap());
        }
    }

    #[test]
    fn product_law() {
        for name in ["C4", "Q8"] {
            let g = get(name).unwrap();
            let reps = sigma_reps(&g, 8).unwrap();
            for l in reps.iter().take(8) {
                for m in reps.iter().take(8) {
                    let lhs = y_elt(&g, l).unwrap().compose(&y_elt(&g, m).unwrap()).unwrap();
                    assert_eq!(lhs, y_product_formula(&g, l, m).unwrap(), "{name}");
                }
            }
        }
    }
}
