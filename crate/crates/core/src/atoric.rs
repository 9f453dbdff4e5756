//! Atoric p-groups, the largest atoric quotient `P^@`, subquotient tests and
//! the basis counts of the morphism spaces between groups with a common
//! atoric quotient.

use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::biset::{q_group, space, BisetSpace};
use crate::bits::Bits;
use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{isomorphic, Group, Quotient};

fn require_p_group(p: &Group) -> Result<()> {
    if p.is_p_group() {
        Ok(())
    } else {
        Err(Error::NotPGroup(p.order()))
    }
}

/// `Ω1Z(P) <= Φ(P)`.
pub fn is_atoric(p: &Group) -> Result<bool> {
    require_p_group(p)?;
    Ok(p.omega1_center(None)?.is_subset(&p.frattini()))
}

/// The trivial subgroup is the only normal subgroup meeting `Φ(P)` trivially.
pub fn is_atoric_by_normals(p: &Group) -> Result<bool> {
    require_p_group(p)?;
    let phi = p.frattini();
    Ok(p.lattice().normals.iter().all(|n| n.len() == 1 || n.intersection(&phi).len() > 1))
}

/// `P = N × T` with `N` maximal among normal subgroups meeting `Φ(P)`
/// trivially, and `P/N ≅ T` atoric.
#[derive(Debug)]
pub struct AtoricDecomposition {
    pub kernel: Bits,
    pub complement: Bits,
    pub quotient: Arc<Quotient>,
}

impl AtoricDecomposition {
    pub fn group(&self) -> &Arc<Group> {
        &self.quotient.group
    }
}

/// Every maximal normal subgroup meeting `Φ(P)` trivially. Such subgroups are
/// central and elementary abelian, so the search stays inside `Ω1Z(P)`.
pub fn atoric_kernels(p: &Group) -> Result<Vec<Bits>> {
    require_p_group(p)?;
    let phi = p.frattini();
    let omega = p.omega1_center(None)?;
    let cands: Vec<Bits> = p
        .lattice()
        .subgroups_of(&omega)
        .filter(|n| n.intersection(&phi).len() == 1)
        .copied()
        .collect();
    Ok(cands
        .iter()
        .filter(|n| !cands.iter().any(|m| m != *n && n.is_subset(m)))
        .rev()
        .copied()
        .collect())
}

/// A complement `T` with `P = N × T`, for `N` central elementary abelian
/// with `N ∩ Φ(P) = 1`: a complement of `NΦ/Φ` in `P/Φ`, pulled back.
pub fn complement(p: &Group, n: &Bits) -> Result<Bits> {
    let phi = p.frattini();
    if n.intersection(&phi).len() != 1 || !n.is_subset(&p.center()) {
        return Err(Error::Hypothesis("N must be central and meet the Frattini subgroup trivially".into()));
    }
    let nphi = p.join(n, &phi);
    let want = p.order() / n.len();
    p.lattice()
        .all
        .iter()
        .find(|x| x.len() == want && phi.is_subset(x) && x.intersection(&nphi) == phi)
        .copied()
        .ok_or_else(|| Error::Hypothesis("no complement found".into()))
}

static DECOMPOSITIONS: Lazy<DashMap<u64, Arc<AtoricDecomposition>>> = Lazy::new(DashMap::new);

/// `P^@` through the first maximal kernel; memoized per group.
pub fn atoric_quotient(p: &Group) -> Result<Arc<AtoricDecomposition>> {
    if let Some(d) = DECOMPOSITIONS.get(&p.id()) {
        return Ok(d.clone());
    }
    let n = atoric_kernels(p)?[0];
    let d = Arc::new(decompose_with(p, &n)?);
    Ok(DECOMPOSITIONS.entry(p.id()).or_insert(d).clone())
}

/// The decomposition attached to a given kernel.
pub fn decompose_with(p: &Group, n: &Bits) -> Result<AtoricDecomposition> {
    let complement = complement(p, n)?;
    Ok(AtoricDecomposition { kernel: *n, complement, quotient: p.quotient(n)? })
}

/// Name of a catalog group isomorphic to `g`, if any.
pub fn identify(g: &Group) -> Option<String> {
    let entries = catalog::entries();
    entries
        .iter()
        .filter_map(|e| catalog::get(&e.name).ok())
        .find(|h| h.order() == g.order() && isomorphic(g, h))
        .map(|h| h.name().to_string())
}

/// `h ⊑ g`: some section `T/S` of `g` is isomorphic to `h`.
pub fn is_subquotient(h: &Group, g: &Group) -> bool {
    let n = h.order();
    if g.order() % n != 0 {
        return false;
    }
    let lat = g.lattice();
    // one representative per conjugacy class of T suffices
    lat.classes.iter().filter(|c| c.rep.len() % n == 0).any(|c| {
        let t = c.rep;
        lat.subgroups_of(&t)
            .filter(|s| s.len() * n == t.len() && g.normalizes(&t, s))
            .any(|s| isomorphic(&g.section_group(&t, s).expect("valid section").group, h))
    })
}

/// `P^@ ≅ L`.
pub fn has_atoric_quotient(p: &Group, l: &Group) -> Result<bool> {
    let d = atoric_quotient(p)?;
    Ok(isomorphic(d.group(), l))
}

/// Basis size of the morphism space from `P` to `Q` in the category of
/// groups with atoric quotient `L`, counted two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SharpCounts {
    /// Classes of `M <= Q×P` with `q(M)^@ ≅ L`.
    pub by_quotient: usize,
    /// Classes of `M` whose projections onto the `L` factors are onto and
    /// whose kernels meet the `L` factors trivially.
    pub by_projection: usize,
}

impl SharpCounts {
    pub fn agree(&self) -> bool {
        self.by_quotient == self.by_projection
    }
}

/// Projection `P = E × T -> T` along the kernel, as a map on elements.
fn factor_projection(p: &Group, d: &AtoricDecomposition) -> Vec<usize> {
    let mut proj = vec![usize::MAX; p.order()];
    for e in d.kernel.iter() {
        for t in d.complement.iter() {
            proj[p.mul(e, t)] = t;
        }
    }
    proj
}

fn projection_criterion(sp: &BisetSpace, m: &Bits, q_side: (&AtoricDecomposition, &[usize]), p_side: (&AtoricDecomposition, &[usize])) -> bool {
    let (dq, pq) = q_side;
    let (dp, pp) = p_side;
    let mut img1 = Bits::empty();
    let mut img2 = Bits::empty();
    let mut k1 = Bits::empty();
    let mut k2 = Bits::empty();
    for x in m.iter() {
        let (a, b) = sp.unpair(x);
        img1.insert(pq[a]);
        img2.insert(pp[b]);
        if b == 0 && dq.complement.contains(a) {
            k1.insert(a);
        }
        if a == 0 && dp.complement.contains(b) {
            k2.insert(b);
        }
    }
    img1 == dq.complement && img2 == dp.complement && k1.len() == 1 && k2.len() == 1
}

/// Largest `|Q×P|` whose subgroup lattice is enumerated for the counts.
pub const SHARP_GATE: usize = 128;

pub fn sharp_hom_dimension(p: &Arc<Group>, q: &Arc<Group>, l: &Group) -> Result<SharpCounts> {
    if !is_atoric(l)? {
        return Err(Error::NotAtoric);
    }
    if !has_atoric_quotient(p, l)? || !has_atoric_quotient(q, l)? {
        return Err(Error::Hypothesis("both groups must have atoric quotient isomorphic to L".into()));
    }
    let (dp, dq) = (atoric_quotient(p)?, atoric_quotient(q)?);
    let (pp, pq) = (factor_projection(p, &dp), factor_projection(q, &dq));
    let sp = space(q, p)?;
    let mut counts = SharpCounts { by_quotient: 0, by_projection: 0 };
    for c in sp.all_classes(SHARP_GATE)? {
        let m = sp.class(c).rep;
        let qm = q_group(&sp, &m)?;
        if isomorphic(atoric_quotient(&qm.group)?.group(), l) {
            counts.by_quotient += 1;
        }
        if projection_criterion(&sp, &m, (&dq, &pq), (&dp, &pp)) {
            counts.by_projection += 1;
        }
    }
    Ok(counts)
}
