//! Biset functors evaluated as explicit matrices, the Burnside functor, the
//! subspaces `δ_Φ F(G)` and the decomposition of `F(G)` over minimal sections.

use std::sync::Arc;

use num_traits::One;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::atoric::identify;
use crate::biset::{conjugation_iso, def, res, space, BisetElt};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::idempotents::{b_l, classes_with_atoric_quotient, minimal_sections, normalizer_transversal, phi_one, u, v, SectionClass};
use crate::linalg::{Matrix, Subspace};
use crate::rational::{qi, Q};

/// A biset functor given by its evaluations and the matrices of bisets.
pub trait BisetFunctor: Sync {
    fn name(&self) -> &str;
    fn dim(&self, g: &Arc<Group>) -> usize;
    fn basis_labels(&self, g: &Arc<Group>) -> Vec<String>;
    /// Matrix of `F(x): F(G) -> F(H)` for `x` in `QB(H,G)`.
    fn act(&self, x: &BisetElt) -> Result<Matrix>;
}

/// `F(G)` with its basis labels.
#[derive(Debug, Clone)]
pub struct FunctorEvaluation {
    pub group: Arc<Group>,
    pub dim: usize,
    pub basis_labels: Vec<String>,
}

pub fn evaluate(f: &dyn BisetFunctor, g: &Arc<Group>) -> FunctorEvaluation {
    FunctorEvaluation { group: g.clone(), dim: f.dim(g), basis_labels: f.basis_labels(g) }
}

static TRIVIAL: Lazy<Arc<Group>> = Lazy::new(|| Group::from_table("1", &[vec![0]]).expect("trivial table"));

/// The Burnside functor `F(G) = QB(G)`, realized as `QB(G,1)` with the
/// action by composition. The basis is `[G/H]` over the lattice classes.
#[derive(Debug, Default, Clone, Copy)]
pub struct BurnsideFunctor;

impl BurnsideFunctor {
    /// `[G/H]` as the biset `[(G×1)/(H×1)]`.
    pub fn basis_elt(&self, g: &Arc<Group>, class: usize) -> Result<BisetElt> {
        // with a trivial right factor the pair (h, 1) has index h
        BisetElt::transitive(g, &TRIVIAL, &g.lattice().classes[class].rep)
    }

    /// Coordinates of an element of `QB(G,1)`.
    pub fn coordinates(&self, x: &BisetElt) -> Result<Vec<Q>> {
        if x.src().order() != 1 {
            return Err(Error::GroupMismatch("expected an element of B(G,1)".into()));
        }
        let g = x.dst();
        let lat = g.lattice();
        let mut out = vec![qi(0); lat.classes.len()];
        for (c, q) in x.class_terms() {
            let rep = x.class_info(c).rep;
            let k = lat.class_of[lat.index_of(&rep).ok_or(Error::NotASubgroup)?];
            out[k] += q;
        }
        Ok(out)
    }
}

impl BisetFunctor for BurnsideFunctor {
    fn name(&self) -> &str {
        "burnside"
    }

    fn dim(&self, g: &Arc<Group>) -> usize {
        g.lattice().classes.len()
    }

    fn basis_labels(&self, g: &Arc<Group>) -> Vec<String> {
        g.lattice().classes.iter().map(|c| format!("[G/{:?}]", c.rep.to_vec())).collect()
    }

    fn act(&self, x: &BisetElt) -> Result<Matrix> {
        let (h, g) = (x.dst().clone(), x.src().clone());
        space(&g, &TRIVIAL)?;
        let cols: Vec<Vec<Q>> = (0..self.dim(&g))
            .map(|j| self.coordinates(&x.compose(&self.basis_elt(&g, j)?)?))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.dim(&h), &cols))
    }
}

/// `δ_Φ F(G)` computed as the image of `φ_1^G` and as the common kernel of
/// restrictions to maximal subgroups and deflations by minimal normal
/// subgroups inside `Φ(G)`.
#[derive(Debug, Clone)]
pub struct DeltaPhi {
    pub by_idempotent: Subspace,
    pub by_kernels: Subspace,
}

impl DeltaPhi {
    pub fn agree(&self) -> bool {
        self.by_idempotent == self.by_kernels
    }
}

pub fn delta_phi_image(f: &dyn BisetFunctor, g: &Arc<Group>) -> Result<Subspace> {
    Ok(f.act(&phi_one(g))?.column_space())
}

pub fn delta_phi(f: &dyn BisetFunctor, g: &Arc<Group>) -> Result<DeltaPhi> {
    let by_idempotent = delta_phi_image(f, g)?;
    let lat = g.lattice();
    let mut k = Subspace::full(f.dim(g));
    for h in &lat.maximal {
        k = k.restricted_kernel(&f.act(&res(g, h)?)?);
    }
    let phi = g.frattini();
    let nontrivial: Vec<&Bits> = lat.normals.iter().filter(|n| n.len() > 1).collect();
    for n in &nontrivial {
        let minimal = !nontrivial.iter().any(|m| m != n && m.is_subset(n));
        if minimal && n.is_subset(&phi) {
            k = k.restricted_kernel(&f.act(&def(g, n)?)?);
        }
    }
    Ok(DeltaPhi { by_idempotent, by_kernels: k })
}

/// `δ_Φ F(T/S)^{N_G(T,S)/T}`.
pub fn invariant_summand(f: &dyn BisetFunctor, g: &Arc<Group>, c: &SectionClass) -> Result<Subspace> {
    let q = g.section_group(&c.t, &c.s)?;
    let mut w = delta_phi_image(f, &q.group)?;
    let id = Matrix::identity(f.dim(&q.group));
    for x in normalizer_transversal(g, &c.t, &c.s)? {
        if c.t.contains(x) {
            continue;
        }
        let a = f.act(&conjugation_iso(g, &c.t, &c.s, x)?)?;
        w = w.restricted_kernel(&a.sub(&id));
    }
    Ok(w)
}

#[derive(Debug, Clone, Serialize)]
pub struct Summand {
    pub section: (Vec<usize>, Vec<usize>),
    pub quotient_order: usize,
    pub quotient_iso: Option<String>,
    pub delta_dim: usize,
    pub invariant_dim: usize,
}

/// `F(G) ≅ ⊕ δ_Φ F(T/S)^{N_G(T,S)/T}` with the maps `V` (sum of the scaled
/// `F(v)`) and `U` (sum of the `F(u)`) as matrices.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub group: String,
    pub functor: String,
    pub total_dim: usize,
    pub summands: Vec<Summand>,
    #[serde(skip)]
    pub u: Matrix,
    #[serde(skip)]
    pub v: Matrix,
    /// Every `F(v)` lands in its summand.
    pub images_in_summands: bool,
    pub uv_identity: bool,
    pub vu_identity: bool,
    pub dims_balance: bool,
}

impl Decomposition {
    pub fn passed(&self) -> bool {
        self.images_in_summands && self.uv_identity && self.vu_identity && self.dims_balance
    }
}

pub fn evaluation_decomposition(f: &dyn BisetFunctor, g: &Arc<Group>) -> Result<Decomposition> {
    let n = f.dim(g);
    let ms = minimal_sections(g);
    let mut summands = Vec::new();
    let mut u_cols: Vec<Vec<Q>> = Vec::new();
    let mut v_rows: Vec<Vec<Q>> = Vec::new();
    let mut images_in_summands = true;
    for c in &ms.classes {
        let q = g.section_group(&c.t, &c.s)?;
        let delta = delta_phi_image(f, &q.group)?;
        let w = invariant_summand(f, g, c)?;
        let scale = Q::one() / qi(c.index() as i64);
        let vm = f.act(&v(g, &c.t, &c.s)?)?.scale(&scale);
        let mut block = vec![vec![qi(0); n]; w.dim()];
        for j in 0..n {
            match w.coordinates(&vm.column(j)) {
                Some(coords) => {
                    for (i, x) in coords.into_iter().enumerate() {
                        block[i][j] = x;
                    }
                }
                None => images_in_summands = false,
            }
        }
        v_rows.extend(block);
        if w.dim() > 0 {
            let um = f.act(&u(g, &c.t, &c.s)?)?.mul(&w.basis_matrix());
            u_cols.extend(um.columns());
        }
        summands.push(Summand {
            section: (c.t.to_vec(), c.s.to_vec()),
            quotient_order: q.group.order(),
            quotient_iso: identify(&q.group),
            delta_dim: delta.dim(),
            invariant_dim: w.dim(),
        });
    }
    let total: usize = summands.iter().map(|s| s.invariant_dim).sum();
    let u = Matrix::from_columns(n, &u_cols);
    let v = Matrix::from_columns(n, &v_rows).transpose();
    let dims_balance = total == n;
    let (uv_identity, vu_identity) = if dims_balance {
        (u.mul(&v).is_identity(), v.mul(&u).is_identity())
    } else {
        (false, false)
    };
    Ok(Decomposition {
        group: g.name().to_string(),
        functor: f.name().to_string(),
        total_dim: n,
        summands,
        u,
        v,
        images_in_summands,
        uv_identity,
        vu_identity,
        dims_balance,
    })
}

/// Rank of `F(b_L^P)` against the sum of the summand dimensions over the
/// classes with `(T/S)^@ ≅ L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionDims {
    pub lhs: usize,
    pub rhs: usize,
}

pub fn b_projection_dims(f: &dyn BisetFunctor, p: &Arc<Group>, l: &Group) -> Result<ProjectionDims> {
    let lhs = f.act(&b_l(p, l)?)?.rank();
    let ms = minimal_sections(p);
    let mut rhs = 0;
    for i in classes_with_atoric_quotient(p, l)? {
        rhs += invariant_summand(f, p, &ms.classes[i])?.dim();
    }
    Ok(ProjectionDims { lhs, rhs })
}
