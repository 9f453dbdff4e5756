//! Verification suites. Each suite runs a family of exact checks on one group
//! and returns a report; failures carry a witness.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atoric::{
    atoric_kernels, atoric_quotient, complement, decompose_with, is_atoric, is_atoric_by_normals, is_subquotient,
    sharp_hom_dimension, SHARP_GATE,
};
use crate::biset::{
    def, factorize, identity, ind, inf, res, space, tilde, BisetElt, Goursat,
};
use crate::bits::Bits;
use crate::burnside::{deflate, idempotent_e, induce, inflate, m_scalar, restrict, BurnsideElt};
use crate::catalog;
use crate::error::{Error, Result};
use crate::functor::{b_projection_dims, delta_phi, evaluation_decomposition, BisetFunctor, BurnsideFunctor};
use crate::group::{automorphisms, is_nilpotent, isomorphic, Group};
use crate::idempotents::{
    atoric_types, b_l, check_system, e_tilde, epsilon, epsilon_system, epsilon_via_uv, minimal_sections,
    phi_one, phi_one_explicit, phi_one_sided, phi_system, phi_via_inflation, phi_y_prediction, sigma_reps,
    sigma_sample, u, u_v_prediction, v, y_elt, y_product_formula, SectionClass,
};
use crate::linalg::Matrix;
use crate::poset::{mobius_normals_in, mobius_subgroups};
use crate::rational::Q;

pub const SUITES: &[&str] = &["burnside", "phi", "epsilon", "central", "outdim", "bL", "evaluation", "atoric", "lemmas", "sharp"];

/// Size gates and sampling parameters.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    /// Largest `|G|` for which `Σ(G,G)` is found by filtering the subgroups of
    /// `G×G`; above it the classes are built from Goursat data.
    pub full_basis_max_order: usize,
    /// Largest `|G|` for which the whole basis of `ẽ B(G,G) ẽ` is used.
    pub exhaustive_max_order: usize,
    /// Largest order of a partner group for exhaustive checks over all
    /// transitive bisets.
    pub partner_max_order: usize,
    /// Largest `|G|` for which sampled checks run.
    pub sampled_max_order: usize,
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            full_basis_max_order: 8,
            exhaustive_max_order: 12,
            partner_max_order: 8,
            sampled_max_order: 16,
            sample_count: 50,
            seed: 0,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let gates = [self.full_basis_max_order, self.exhaustive_max_order, self.partner_max_order, self.sampled_max_order];
        if gates.contains(&0) || self.sample_count == 0 {
            return Err(Error::Hypothesis("gates and sample count must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being certified.
    #[serde(rename = "paper_ref")]
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub group: String,
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// `Ok(None)` passes, `Ok(Some(witness))` fails, a gate error skips.
type Outcome = Result<Option<String>>;

struct Ctx<'a> {
    g: &'a Arc<Group>,
    cfg: &'a Config,
    checks: Vec<Check>,
}

impl<'a> Ctx<'a> {
    fn check(&mut self, name: &str, statement: &str, f: impl FnOnce() -> Outcome) {
        let (status, witness) = match f() {
            Ok(None) => (Status::Pass, None),
            Ok(Some(w)) => (Status::Fail, Some(w)),
            Err(Error::GateExceeded(m)) => (Status::Skipped, Some(m)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        self.checks.push(Check { name: name.into(), statement: statement.into(), status, witness });
    }

    fn skip(&mut self, name: &str, statement: &str, why: &str) {
        self.checks.push(Check {
            name: name.into(),
            statement: statement.into(),
            status: Status::Skipped,
            witness: Some(why.into()),
        });
    }

    /// A generator seeded by the configuration, the group and the check, so
    /// results do not depend on scheduling.
    fn rng(&self, check: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ fnv(self.g.name()) ^ fnv(check).rotate_left(17))
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn fail_if(bad: bool, witness: impl FnOnce() -> String) -> Outcome {
    Ok(bad.then(witness))
}

/// First failing item, as a witness.
fn first_failure<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(&T) -> Result<Option<String>>) -> Outcome {
    for x in items {
        if let Some(w) = f(&x)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Runs one suite on one group.
pub fn run(suite: &str, g: &Arc<Group>, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut ctx = Ctx { g, cfg, checks: Vec::new() };
    match suite {
        "burnside" => suite_burnside(&mut ctx),
        "phi" => suite_phi(&mut ctx),
        "epsilon" => suite_epsilon(&mut ctx),
        "central" => suite_central(&mut ctx),
        "outdim" => suite_outdim(&mut ctx),
        "bL" => suite_bl(&mut ctx),
        "evaluation" => suite_evaluation(&mut ctx),
        "atoric" => suite_atoric(&mut ctx),
        "lemmas" => suite_lemmas(&mut ctx),
        "sharp" => suite_sharp(&mut ctx),
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(Report {
        group: g.name().to_string(),
        suite: suite.to_string(),
        checks: ctx.checks,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Expands `"all"` and validates suite names.
pub fn expand_suites(names: &[String]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(SUITES.iter().map(|s| s.to_string()));
        } else if let Some(s) = SUITES.iter().find(|s| s.eq_ignore_ascii_case(n)) {
            out.push(s.to_string());
        } else {
            return Err(Error::UnknownSuite(n.clone()));
        }
    }
    out.dedup();
    Ok(out)
}

/// Runs every (group, suite) pair in parallel; the reports come back in
/// group-major, suite-minor order.
pub fn run_many(groups: &[Arc<Group>], suites: &[String], cfg: &Config) -> Result<Vec<Report>> {
    use rayon::prelude::*;
    let jobs: Vec<(&Arc<Group>, &String)> = groups.iter().flat_map(|g| suites.iter().map(move |s| (g, s))).collect();
    jobs.par_iter().map(|(g, s)| run(s, g, cfg)).collect()
}

fn rank(elts: &[BisetElt]) -> usize {
    let mut index: BTreeMap<Bits, usize> = BTreeMap::new();
    for e in elts {
        for (l, _) in e.sorted_terms() {
            let n = index.len();
            index.entry(l).or_insert(n);
        }
    }
    let cols: Vec<Vec<Q>> = elts
        .iter()
        .map(|e| {
            let mut v = vec![Q::zero(); index.len()];
            for (l, c) in e.sorted_terms() {
                v[index[&l]] = c;
            }
            v
        })
        .collect();
    Matrix::from_columns(index.len(), &cols).rank()
}

fn random_subgroup(a: &Group, rng: &mut ChaCha8Rng) -> Bits {
    let k = rng.gen_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..a.order())).collect();
    a.closure(&gens)
}

/// Subgroups of `left × right` to test: every class when both groups are
/// small, otherwise random subgroups.
fn transitive_reps(left: &Arc<Group>, right: &Arc<Group>, cfg: &Config, rng: &mut ChaCha8Rng) -> Result<Vec<Bits>> {
    let sp = space(left, right)?;
    if left.order() <= cfg.partner_max_order && right.order() <= cfg.partner_max_order {
        Ok(sp.all_classes(usize::MAX)?.into_iter().map(|c| sp.class(c).rep).collect())
    } else {
        Ok((0..cfg.sample_count).map(|_| random_subgroup(&sp.ambient, rng)).collect())
    }
}

fn partners(max_order: usize) -> Result<Vec<Arc<Group>>> {
    catalog::groups_up_to(max_order)
}

/// Representatives of `Σ(G,G)`: all classes up to the exhaustive gate, a
/// seeded sample up to the sampling gate.
fn sigma_for(ctx: &Ctx, check: &str) -> Result<(Vec<Bits>, bool)> {
    let (g, cfg) = (ctx.g, ctx.cfg);
    if g.order() <= cfg.exhaustive_max_order {
        Ok((sigma_reps(g, cfg.full_basis_max_order)?, true))
    } else if g.order() <= cfg.sampled_max_order {
        Ok((sigma_sample(g, cfg.sample_count, cfg.seed ^ fnv(check))?, false))
    } else {
        Err(Error::GateExceeded(format!("order {} above the sampling gate {}", g.order(), cfg.sampled_max_order)))
    }
}

fn proper_subgroup_reps(g: &Group) -> Vec<Bits> {
    g.lattice().classes.iter().map(|c| c.rep).filter(|h| h.len() < g.order()).collect()
}

fn fmt_bits(b: &Bits) -> String {
    format!("{:?}", b.to_vec())
}

fn fmt_section(t: &Bits, s: &Bits) -> String {
    format!("(T={}, S={})", fmt_bits(t), fmt_bits(s))
}

fn suite_burnside(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let lat = g.lattice();
    let es: Vec<BurnsideElt> = lat.classes.iter().map(|c| idempotent_e(&g, &c.rep).unwrap()).collect();
    ctx.check("e_orthogonal_idempotents", "the e_H^G are orthogonal idempotents", || {
        first_failure(0..es.len(), |&i| {
            first_failure(0..es.len(), |&j| {
                let p = es[i].mul(&es[j])?;
                let want = if i == j { es[i].clone() } else { BurnsideElt::zero(&g) };
                fail_if(p != want, || format!("e_{i} e_{j} = {p}"))
            })
        })
    });
    ctx.check("e_sum_to_unit", "the e_H^G sum to [G/G]", || {
        let mut s = BurnsideElt::zero(&g);
        for e in &es {
            s = s.add(e)?;
        }
        fail_if(s != BurnsideElt::one(&g), || format!("sum = {s}"))
    });
    ctx.check("e_marks_indicator", "marks of e_H^G are the indicator of the class of H", || {
        first_failure(0..es.len(), |&i| {
            let m = es[i].marks();
            let ok = m.iter().enumerate().all(|(k, x)| *x == if k == i { Q::one() } else { Q::zero() });
            fail_if(!ok, || format!("class {i}"))
        })
    });
    ctx.check("marks_multiplicative", "marks are multiplicative on the basis [G/H]", || {
        let basis: Vec<BurnsideElt> = lat.classes.iter().map(|c| BurnsideElt::basis(&g, &c.rep).unwrap()).collect();
        first_failure(0..basis.len(), |&i| {
            first_failure(i..basis.len(), |&j| {
                let p = basis[i].mul(&basis[j])?.marks();
                let (a, b) = (basis[i].marks(), basis[j].marks());
                let ok = p.iter().zip(a.iter().zip(&b)).all(|(x, (y, z))| *x == y * z);
                fail_if(!ok, || format!("classes {i}, {j}"))
            })
        })
    });
    ctx.check("mobius_identity", "Möbius functions satisfy their defining identity", || {
        let ok = mobius_subgroups(&g).defining_identity_holds() && mobius_normals_in(&g, &g.whole()).defining_identity_holds();
        fail_if(!ok, || "defining identity".into())
    });
    ctx.check("mobius_frattini", "μ(X,G) = 0 unless X contains Φ(G)", || {
        let (mob, phi, whole) = (mobius_subgroups(&g), g.frattini(), g.whole());
        first_failure(lat.all.iter(), |x| fail_if(!phi.is_subset(x) && mob.mu(x, &whole) != 0, || fmt_bits(x)))
    });
    ctx.check("m_scalar_frattini", "m_{G,N} = 1 for normal N inside Φ(G)", || {
        let phi = g.frattini();
        first_failure(lat.normals.iter().filter(|n| n.is_subset(&phi)), |n| {
            fail_if(m_scalar(&g, n)? != Q::one(), || fmt_bits(n))
        })
    });
    ctx.check("tilde_multiplicative", "the tilde map is a unitary ring homomorphism", || {
        if tilde(&BurnsideElt::one(&g)) != identity(&g) {
            return Ok(Some("tilde([G/G]) is not the identity".into()));
        }
        let basis: Vec<BurnsideElt> = lat.classes.iter().map(|c| BurnsideElt::basis(&g, &c.rep).unwrap()).collect();
        first_failure(0..basis.len(), |&i| {
            first_failure(0..basis.len(), |&j| {
                let lhs = tilde(&basis[i].mul(&basis[j])?);
                fail_if(lhs != tilde(&basis[i]).compose(&tilde(&basis[j]))?, || format!("classes {i}, {j}"))
            })
        })
    });
}

fn suite_phi(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let cfg = ctx.cfg.clone();
    let Ok(system) = phi_system(&g) else {
        ctx.skip("phi", "phi idempotents", "construction failed");
        return;
    };
    let phi_g = g.frattini();
    ctx.check("phi_orthogonal_idempotents", "the φ_N^G are orthogonal idempotents summing to ẽ_G^G", || {
        let items: Vec<BisetElt> = system.iter().map(|x| x.1.clone()).collect();
        let r = check_system(&items, &e_tilde(&g))?;
        fail_if(!r.passed(), || format!("{r:?}"))
    });
    ctx.check("phi_one_sided_form", "φ_N^G = ẽ_G^G Σ μ_⊴G(N,M) [(G×G)/Δ_M(G)]", || {
        first_failure(system.iter(), |(n, p)| fail_if(*p != phi_one_sided(&g, n)?, || fmt_bits(n)))
    });
    ctx.check("phi_inflation_form", "φ_N^G = Inf φ_1^{G/N} Def", || {
        first_failure(system.iter(), |(n, p)| fail_if(*p != phi_via_inflation(&g, n)?, || fmt_bits(n)))
    });
    ctx.check("phi_one_explicit_form", "explicit expansion of φ_1^G over Δ_M(X)", || {
        fail_if(phi_one(&g) != phi_one_explicit(&g)?, || "φ_1".into())
    });
    ctx.check("phi_in_algebra", "φ_N^G = ẽ φ_N^G = φ_N^G ẽ", || {
        let e = e_tilde(&g);
        first_failure(system.iter(), |(n, p)| {
            fail_if(e.compose(p)? != *p || p.compose(&e)? != *p, || fmt_bits(n))
        })
    });
    ctx.check("phi_restriction_vanishes", "Res_H^G φ_N^G = 0 for proper H", || {
        first_failure(proper_subgroup_reps(&g), |h| {
            let r = res(&g, h)?;
            first_failure(system.iter(), |(n, p)| {
                fail_if(!r.compose(p)?.is_zero(), || format!("H={} N={}", fmt_bits(h), fmt_bits(n)))
            })
        })
    });
    ctx.check("phi_deflation_vanishes", "Def_{G/M}^G φ_N^G = 0 when M ∩ Φ(G) is not inside N", || {
        first_failure(g.lattice().normals.iter(), |m| {
            let d = def(&g, m)?;
            first_failure(system.iter(), |(n, p)| {
                if m.intersection(&phi_g).is_subset(n) {
                    return Ok(None);
                }
                fail_if(!d.compose(p)?.is_zero(), || format!("M={} N={}", fmt_bits(m), fmt_bits(n)))
            })
        })
    });
    let mut rng = ctx.rng("phi_kills_transitive");
    ctx.check("phi_kills_transitive", "φ_N^G [(G×H)/L] = 0 unless p1(L) = G and k1(L) ∩ Φ(G) <= N", || {
        if g.order() > cfg.sampled_max_order {
            return Err(Error::GateExceeded(format!("order {} above the sampling gate", g.order())));
        }
        let hs = if g.order() <= cfg.partner_max_order {
            partners(cfg.partner_max_order)?
        } else {
            vec![g.clone(), catalog::get("C2")?]
        };
        first_failure(hs.iter(), |h| {
            let sp = space(&g, h)?;
            first_failure(transitive_reps(&g, h, &cfg, &mut rng)?, |l| {
                let gs = Goursat::of(&sp, l);
                let x = BisetElt::transitive(&g, h, l)?;
                first_failure(system.iter(), |(n, p)| {
                    let allowed = gs.p1 == g.whole() && gs.k1.intersection(&phi_g).is_subset(n);
                    fail_if(!allowed && !p.compose(&x)?.is_zero(), || {
                        format!("H={} L={} N={}", h.name(), fmt_bits(l), fmt_bits(n))
                    })
                })
            })
        })
    });
    let sigma = sigma_for(ctx, "phi_sigma");
    let sigma_ok = sigma.as_ref().map(|s| s.0.clone()).map_err(|e| e.clone());
    ctx.check("phi_one_times_y", "φ_1^G Y_L = Σ μ_⊴G(1,N) Y_{(N×1)L}, nonzero iff k1(L) ∩ Φ(G) = 1", || {
        let sp = space(&g, &g)?;
        let p1 = phi_one(&g);
        first_failure(sigma_ok.clone()?, |l| {
            let y = y_elt(&g, l)?;
            let lhs = p1.compose(&y)?;
            let gs = Goursat::of(&sp, l);
            if lhs != phi_y_prediction(&g, l)? {
                return Ok(Some(format!("formula fails for L={}", fmt_bits(l))));
            }
            if lhs.is_zero() != (gs.k1.intersection(&phi_g).len() > 1) {
                return Ok(Some(format!("left vanishing criterion fails for L={}", fmt_bits(l))));
            }
            let rhs = y.compose(&p1)?;
            fail_if(rhs.is_zero() != (gs.k2.intersection(&phi_g).len() > 1), || {
                format!("right vanishing criterion fails for L={}", fmt_bits(l))
            })
        })
    });
    ctx.check("phi_one_times_y_independent", "the nonzero φ_1^G Y_L are linearly independent", || {
        let p1 = phi_one(&g);
        let mut items = Vec::new();
        for l in sigma_ok.clone()? {
            let x = p1.compose(&y_elt(&g, &l)?)?;
            if !x.is_zero() {
                items.push(x);
            }
        }
        let r = rank(&items);
        fail_if(r != items.len(), || format!("rank {r} of {} elements", items.len()))
    });
    ctx.check("y_basis_independent", "the Y_L for L in [Σ(G,G)] are linearly independent", || {
        let items: Vec<BisetElt> = sigma_ok.clone()?.iter().map(|l| y_elt(&g, l)).collect::<Result<_>>()?;
        let r = rank(&items);
        fail_if(r != items.len(), || format!("rank {r} of {} elements", items.len()))
    });
    let pairs = |reps: &[Bits], rng: &mut ChaCha8Rng| -> Vec<(Bits, Bits)> {
        let n = reps.len();
        // products of Y's are costly at the sampling gate
        let count = if g.order() > cfg.exhaustive_max_order { cfg.sample_count / 10 } else { cfg.sample_count };
        if n * n <= count {
            reps.iter().flat_map(|a| reps.iter().map(move |b| (*a, *b))).collect()
        } else {
            (0..count.max(1)).map(|_| (reps[rng.gen_range(0..n)], reps[rng.gen_range(0..n)])).collect()
        }
    };
    let mut rng = ctx.rng("y_product_law");
    ctx.check("y_product_law", "Y_L Y_M = (m_{G,K}/|G|) Σ_Z |Z| μ(Z,G) Y_{L*Δ(Z)*M}", || {
        first_failure(pairs(&sigma_ok.clone()?, &mut rng), |(l, m)| {
            let lhs = y_elt(&g, l)?.compose(&y_elt(&g, m)?)?;
            fail_if(lhs != y_product_formula(&g, l, m)?, || format!("L={} M={}", fmt_bits(l), fmt_bits(m)))
        })
    });
    let mut rng = ctx.rng("y_sub_frattini");
    ctx.check("y_sub_frattini", "Y_L Y_M = Y_{L*M} when k2(L) or k1(M) lies in Φ(G)", || {
        let sp = space(&g, &g)?;
        first_failure(pairs(&sigma_ok.clone()?, &mut rng), |(l, m)| {
            let (gl, gm) = (Goursat::of(&sp, l), Goursat::of(&sp, m));
            if !gl.k2.is_subset(&phi_g) && !gm.k1.is_subset(&phi_g) {
                return Ok(None);
            }
            let lhs = y_elt(&g, l)?.compose(&y_elt(&g, m)?)?;
            let lm = crate::biset::star(&sp, l, &sp, m)?;
            fail_if(lhs != y_elt(&g, &lm)?, || format!("L={} M={}", fmt_bits(l), fmt_bits(m)))
        })
    });
}

fn suite_epsilon(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let ms = minimal_sections(&g);
    ctx.check("minimal_sections", "minimal sections satisfy S <= Φ(T) and their classes partition them", || {
        for &(t, s) in &ms.sections {
            if !s.is_subset(&g.frattini_of(&t)) {
                return Ok(Some(fmt_section(&t, &s)));
            }
        }
        let total: usize = ms.classes.iter().map(|c| c.orbit.len()).sum();
        if total != ms.sections.len() {
            return Ok(Some(format!("{} sections, {} in orbits", ms.sections.len(), total)));
        }
        first_failure(ms.classes.iter(), |c| {
            fail_if(c.orbit.len() * c.normalizer.len() != g.order(), || fmt_section(&c.t, &c.s))
        })
    });
    let Ok(sys) = epsilon_system(&g) else {
        ctx.skip("epsilon", "ε idempotents", "construction failed");
        return;
    };
    ctx.check("epsilon_orthogonal_idempotents", "the ε_{T,S}^G are orthogonal idempotents summing to the identity", || {
        let items: Vec<BisetElt> = sys.iter().map(|x| x.1.clone()).collect();
        let r = check_system(&items, &identity(&g))?;
        fail_if(!r.passed(), || format!("{r:?}"))
    });
    ctx.check("epsilon_closed_form", "closed formula for ε equals (1/|N_G(T,S):T|) u v", || {
        first_failure(sys.iter(), |(c, e)| fail_if(*e != epsilon_via_uv(&g, &c.t, &c.s)?, || fmt_section(&c.t, &c.s)))
    });
    ctx.check("epsilon_conjugation_invariant", "ε depends only on the conjugacy class of the section", || {
        first_failure(sys.iter(), |(c, e)| {
            first_failure(c.orbit.iter(), |(t, s)| fail_if(epsilon(&g, t, s)? != *e, || fmt_section(t, s)))
        })
    });
    ctx.check("epsilon_whole_group", "ε_{G,N}^G = φ_N^G", || {
        first_failure(phi_system(&g)?, |(n, p)| fail_if(epsilon(&g, &g.whole(), n)? != *p, || fmt_bits(n)))
    });
    ctx.check("v_is_opposite_of_u", "v_{T,S}^G is the opposite of u_{T,S}^G", || {
        first_failure(ms.classes.iter(), |c| {
            fail_if(v(&g, &c.t, &c.s)? != u(&g, &c.t, &c.s)?.opposite(), || fmt_section(&c.t, &c.s))
        })
    });
    ctx.check("v_after_u", "v u = φ_1^{T/S} Σ Iso(c_g), and v' u = 0 for non-conjugate sections", || {
        let us: Vec<BisetElt> = ms.classes.iter().map(|c| u(&g, &c.t, &c.s)).collect::<Result<_>>()?;
        let vs: Vec<BisetElt> = ms.classes.iter().map(|c| v(&g, &c.t, &c.s)).collect::<Result<_>>()?;
        first_failure(0..us.len(), |&i| {
            first_failure(0..vs.len(), |&j| {
                let p = vs[j].compose(&us[i])?;
                let c: &SectionClass = &ms.classes[i];
                let ok = if i == j { p == u_v_prediction(&g, &c.t, &c.s)? } else { p.is_zero() };
                fail_if(!ok, || format!("classes {i}, {j}"))
            })
        })
    });
}

fn suite_central(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let statement = "φ_1^G commutes with every Y_L when G is nilpotent";
    if !is_nilpotent(&g) {
        ctx.skip("phi_one_central", statement, "group is not nilpotent");
        return;
    }
    let sigma = sigma_for(ctx, "central");
    ctx.check("phi_one_central", statement, || {
        let p1 = phi_one(&g);
        first_failure(sigma?.0, |l| {
            let y = y_elt(&g, l)?;
            fail_if(p1.compose(&y)? != y.compose(&p1)?, || fmt_bits(l))
        })
    });
}

fn minimal_normals(g: &Group) -> Vec<Bits> {
    let nontrivial: Vec<Bits> = g.lattice().normals.iter().filter(|n| n.len() > 1).copied().collect();
    nontrivial.iter().filter(|n| !nontrivial.iter().any(|m| m != *n && m.is_subset(n))).copied().collect()
}

fn suite_outdim(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let statement = "dim φ_1^G ẽB(G,G)ẽ = |Out(G)| when every minimal normal subgroup lies in Φ(G)";
    let phi = g.frattini();
    if !minimal_normals(&g).iter().all(|n| n.is_subset(&phi)) {
        ctx.skip("out_dimension", statement, "some minimal normal subgroup is not inside Φ(G)");
        return;
    }
    if g.order() > ctx.cfg.exhaustive_max_order {
        ctx.skip("out_dimension", statement, "needs the whole basis; order above the exhaustive gate");
        return;
    }
    let cfg = ctx.cfg.clone();
    ctx.check("out_dimension", statement, || {
        let out = automorphisms(&g)?.out_order;
        let d = phi_one_dimension(&g, cfg.full_basis_max_order)?;
        fail_if(d != out, || format!("dimension {d}, |Out(G)| = {out}"))
    });
}

/// `dim φ_1^G ẽB(G,G)ẽ`, as the rank of the `φ_1^G Y_L`.
pub fn phi_one_dimension(g: &Arc<Group>, full_basis_max_order: usize) -> Result<usize> {
    let p1 = phi_one(g);
    let items: Vec<BisetElt> =
        sigma_reps(g, full_basis_max_order)?.iter().map(|l| p1.compose(&y_elt(g, l)?)).collect::<Result<_>>()?;
    Ok(rank(&items))
}

fn same_prime(a: &Group, b: &Group) -> bool {
    a.order() == 1 || b.order() == 1 || a.prime_power() == b.prime_power()
}

fn suite_bl(ctx: &mut Ctx) {
    let p = ctx.g.clone();
    let cfg = ctx.cfg.clone();
    if !p.is_p_group() {
        ctx.skip("b_l", "b_L^P idempotents", "not a p-group");
        return;
    }
    if p.order() > cfg.sampled_max_order {
        ctx.skip("b_l", "b_L^P idempotents", "order above the sampling gate");
        return;
    }
    let Ok(types) = atoric_types(&p) else {
        ctx.skip("b_l", "b_L^P idempotents", "atoric quotients unavailable");
        return;
    };
    let bs: Vec<BisetElt> = match types.iter().map(|l| b_l(&p, l)).collect() {
        Ok(v) => v,
        Err(e) => {
            ctx.check("b_l", "b_L^P idempotents", || Err(e));
            return;
        }
    };
    ctx.check("b_l_orthogonal_idempotents", "the b_L^P are orthogonal idempotents summing to the identity", || {
        let r = check_system(&bs, &identity(&p))?;
        fail_if(!r.passed(), || format!("{r:?}"))
    });
    ctx.check("b_l_nonzero_iff_subquotient", "b_L^P ≠ 0 iff L is a subquotient of P^@", || {
        let at = atoric_quotient(&p)?;
        let mut cands: Vec<Arc<Group>> = types.clone();
        for h in catalog::all_groups()? {
            if h.order() <= p.order() && h.is_p_group() && same_prime(&h, &p) && is_atoric(&h)? {
                cands.push(h);
            }
        }
        first_failure(cands.iter(), |l| {
            let nonzero = !b_l(&p, l)?.is_zero();
            fail_if(nonzero != is_subquotient(l, at.group()), || format!("L={}", l.name()))
        })
    });
    let mut rng = ctx.rng("b_l_commutes");
    ctx.check("b_l_commutes", "b_L^Q a = a b_L^P for transitive (Q,P)-bisets a", || {
        let qs: Vec<Arc<Group>> = catalog::all_groups()?
            .into_iter()
            .filter(|q| q.is_p_group() && same_prime(q, &p) && q.order() <= cfg.sampled_max_order)
            .collect();
        let mut work: Vec<(Arc<Group>, Bits)> = Vec::new();
        if p.order() <= cfg.partner_max_order {
            for q in qs.iter().filter(|q| q.order() <= cfg.partner_max_order) {
                for l in transitive_reps(q, &p, &cfg, &mut rng)? {
                    work.push((q.clone(), l));
                }
            }
        } else {
            for _ in 0..cfg.sample_count {
                let q = qs[rng.gen_range(0..qs.len())].clone();
                let sp = space(&q, &p)?;
                let l = random_subgroup(&sp.ambient, &mut rng);
                work.push((q, l));
            }
        }
        first_failure(work.iter(), |(q, l)| {
            let a = BisetElt::transitive(q, &p, l)?;
            let mut ls = types.clone();
            for t in atoric_types(q)? {
                if !ls.iter().any(|x| isomorphic(x, &t)) {
                    ls.push(t);
                }
            }
            first_failure(ls.iter(), |lt| {
                let lhs = b_l(q, lt)?.compose(&a)?;
                let rhs = a.compose(&b_l(&p, lt)?)?;
                fail_if(lhs != rhs, || format!("Q={} a={} L={}", q.name(), fmt_bits(l), lt.name()))
            })
        })
    });
    let mut rng = ctx.rng("epsilon_separation");
    ctx.check("epsilon_separation", "ε_{V,U}^Q a ε_{T,S}^P ≠ 0 implies (V/U)^@ ≅ (T/S)^@", || {
        let qs: Vec<Arc<Group>> = catalog::all_groups()?
            .into_iter()
            .filter(|q| q.is_p_group() && same_prime(q, &p) && q.order() <= cfg.partner_max_order.max(p.order()))
            .collect();
        let pc = minimal_sections(&p);
        first_failure(0..cfg.sample_count, |_| {
            let q = qs[rng.gen_range(0..qs.len())].clone();
            let qc = minimal_sections(&q);
            let sp = space(&q, &p)?;
            let a = BisetElt::transitive(&q, &p, &random_subgroup(&sp.ambient, &mut rng))?;
            let ci = &pc.classes[rng.gen_range(0..pc.classes.len())];
            let cj = &qc.classes[rng.gen_range(0..qc.classes.len())];
            let x = epsilon(&q, &cj.t, &cj.s)?.compose(&a)?.compose(&epsilon(&p, &ci.t, &ci.s)?)?;
            if x.is_zero() {
                return Ok(None);
            }
            let at_p = atoric_quotient(&p.section_group(&ci.t, &ci.s)?.group)?;
            let at_q = atoric_quotient(&q.section_group(&cj.t, &cj.s)?.group)?;
            fail_if(!isomorphic(at_p.group(), at_q.group()), || {
                format!("Q={} {} {}", q.name(), fmt_section(&cj.t, &cj.s), fmt_section(&ci.t, &ci.s))
            })
        })
    });
}

fn suite_evaluation(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let cfg = ctx.cfg.clone();
    if g.order() > cfg.sampled_max_order {
        ctx.skip("decomposition", "evaluation decomposition", "order above the sampling gate");
        return;
    }
    let f = BurnsideFunctor;
    ctx.check("decomposition", "U V and V U are identities on QB(G) and the sum of invariant summands", || {
        let d = evaluation_decomposition(&f, &g)?;
        fail_if(!d.passed(), || {
            format!(
                "images {} uv {} vu {} dims {} (total {})",
                d.images_in_summands, d.uv_identity, d.vu_identity, d.dims_balance, d.total_dim
            )
        })
    });
    ctx.check("delta_phi_two_routes", "φ_1^G F(G) is the common kernel of restrictions and Frattini deflations", || {
        let ms = minimal_sections(&g);
        let mut groups = vec![g.clone()];
        for c in &ms.classes {
            groups.push(g.section_group(&c.t, &c.s)?.group.clone());
        }
        first_failure(groups.iter(), |h| {
            let d = delta_phi(&f, h)?;
            fail_if(!d.agree(), || format!("{} (dims {} vs {})", h.name(), d.by_idempotent.dim(), d.by_kernels.dim()))
        })
    });
    let mut rng = ctx.rng("functoriality");
    ctx.check("functoriality", "F(b a) = F(b) F(a)", || {
        let small = partners(cfg.partner_max_order)?;
        first_failure(0..cfg.sample_count.min(20), |_| {
            let h = small[rng.gen_range(0..small.len())].clone();
            let k = small[rng.gen_range(0..small.len())].clone();
            let (sa, sb) = (space(&g, &h)?, space(&k, &g)?);
            let a = BisetElt::transitive(&g, &h, &random_subgroup(&sa.ambient, &mut rng))?;
            let b = BisetElt::transitive(&k, &g, &random_subgroup(&sb.ambient, &mut rng))?;
            let lhs = f.act(&b.compose(&a)?)?;
            fail_if(lhs != f.act(&b)?.mul(&f.act(&a)?), || format!("H={} K={}", h.name(), k.name()))
        })
    });
    if g.is_p_group() {
        ctx.check("b_l_projection_dims", "rank F(b_L^P) = Σ dims of summands with (T/S)^@ ≅ L", || {
            first_failure(atoric_types(&g)?, |l| {
                let d = b_projection_dims(&f, &g, l)?;
                fail_if(d.lhs != d.rhs, || format!("L={} {d:?}", l.name()))
            })
        });
    }
}

fn is_elementary_abelian(g: &Group, e: &Bits) -> bool {
    let p = e.iter().map(|x| g.elt_order(x)).max().unwrap_or(1);
    e.iter().all(|x| g.elt_order(x) == 1 || g.elt_order(x) == p)
        && (p == 1 || (2..p).all(|d| p % d != 0))
        && e.iter().all(|x| e.iter().all(|y| g.mul(x, y) == g.mul(y, x)))
}

fn suite_atoric(ctx: &mut Ctx) {
    let p = ctx.g.clone();
    if !p.is_p_group() {
        ctx.skip("atoric", "atoric p-groups", "not a p-group");
        return;
    }
    let phi = p.frattini();
    ctx.check("atoric_conditions_agree", "Ω1Z(P) <= Φ(P) iff no nontrivial normal subgroup meets Φ(P) trivially", || {
        let (a, b) = (is_atoric(&p)?, is_atoric_by_normals(&p)?);
        fail_if(a != b, || format!("{a} vs {b}"))
    });
    ctx.check("frattini_by_powers", "Φ(P) is generated by commutators and p-th powers", || {
        fail_if(p.frattini_by_powers()? != phi, || fmt_bits(&phi))
    });
    ctx.check("kernels_split", "each maximal N with N ∩ Φ(P) = 1 is central elementary abelian with P = N × T", || {
        first_failure(atoric_kernels(&p)?, |n| {
            let t = complement(&p, n)?;
            let ok = is_elementary_abelian(&p, n)
                && n.is_subset(&p.center())
                && n.intersection(&t).len() == 1
                && p.join(n, &t) == p.whole()
                && p.is_normal(&t);
            fail_if(!ok, || fmt_bits(n))
        })
    });
    ctx.check("atoric_quotient_well_defined", "all maximal choices of N give isomorphic quotients", || {
        let at = atoric_quotient(&p)?;
        first_failure(atoric_kernels(&p)?, |n| {
            let d = decompose_with(&p, n)?;
            fail_if(!isomorphic(d.group(), at.group()), || fmt_bits(n))
        })
    });
    ctx.check("atoric_quotient_idempotent", "P^@ is atoric and (P^@)^@ ≅ P^@", || {
        let at = atoric_quotient(&p)?;
        let h = at.group();
        let ok = is_atoric(h)? && isomorphic(atoric_quotient(h)?.group(), h);
        fail_if(!ok, || h.name().to_string())
    });
    ctx.check("trivial_quotient_iff_elementary_abelian", "P^@ = 1 iff P is elementary abelian", || {
        let at = atoric_quotient(&p)?;
        fail_if((at.group().order() == 1) != is_elementary_abelian(&p, &p.whole()), || p.name().to_string())
    });
    ctx.check("quotient_criterion", "(P/K)^@ ≅ P^@ iff K ∩ Φ(P) = 1", || {
        let at = atoric_quotient(&p)?;
        first_failure(p.lattice().normals.iter(), |k| {
            let q = p.quotient(k)?;
            let same = isomorphic(atoric_quotient(&q.group)?.group(), at.group());
            fail_if(same != (k.intersection(&phi).len() == 1), || fmt_bits(k))
        })
    });
    ctx.check("subquotients_monotone", "Q ⊑ P implies Q^@ ⊑ P^@", || {
        let at = atoric_quotient(&p)?;
        let lat = p.lattice();
        first_failure(lat.classes.iter(), |c| {
            first_failure(lat.subgroups_of(&c.rep).filter(|s| p.normalizes(&c.rep, s)), |s| {
                let q = p.section_group(&c.rep, s)?;
                fail_if(!is_subquotient(atoric_quotient(&q.group)?.group(), at.group()), || fmt_section(&c.rep, s))
            })
        })
    });
    ctx.check("subgroup_criteria", "for Q <= P: Q^@ ≅ P^@ iff QN = P iff P = EQ with E central elementary abelian iff P = E × Q with E elementary abelian", || {
        let at = atoric_quotient(&p)?;
        let lat = p.lattice();
        let elem: Vec<Bits> = lat.all.iter().filter(|e| is_elementary_abelian(&p, e)).copied().collect();
        let z = p.center();
        first_failure(lat.all.iter(), |q| {
            let sub = p.subgroup_group(q)?;
            let c1 = isomorphic(atoric_quotient(&sub.group)?.group(), at.group());
            let c2 = p.product_set(q, &at.kernel).len() == p.order();
            let c3 = elem.iter().any(|e| e.is_subset(&z) && p.product_set(e, q).len() == p.order());
            let c4 = elem.iter().any(|e| {
                e.intersection(q).len() == 1
                    && p.product_set(e, q).len() == p.order()
                    && e.iter().all(|x| q.iter().all(|y| p.mul(x, y) == p.mul(y, x)))
            });
            fail_if(!(c1 == c2 && c2 == c3 && c3 == c4), || format!("Q={} ({c1},{c2},{c3},{c4})", fmt_bits(q)))
        })
    });
}

fn suite_lemmas(ctx: &mut Ctx) {
    let g = ctx.g.clone();
    let cfg = ctx.cfg.clone();
    if g.order() > cfg.partner_max_order {
        ctx.skip("lemmas", "identities for the tilde map and ẽ_G^G", "order above the exhaustive gate");
        return;
    }
    let lat = g.lattice();
    let basis = |h: &Arc<Group>| -> Vec<BurnsideElt> {
        h.lattice().classes.iter().map(|c| BurnsideElt::basis(h, &c.rep).unwrap()).collect()
    };
    let xs = basis(&g);
    let subgroups: Vec<Bits> = lat.classes.iter().map(|c| c.rep).collect();
    ctx.check("tilde_restriction", "X̃ Ind_H^G = Ind_H^G (Res X)~ and Res_H^G X̃ = (Res X)~ Res_H^G", || {
        first_failure(subgroups.iter(), |h| {
            let (i, r) = (ind(&g, h)?, res(&g, h)?);
            first_failure(xs.iter(), |x| {
                let rx = tilde(&restrict(x, h)?);
                let ok = tilde(x).compose(&i)? == i.compose(&rx)? && r.compose(&tilde(x))? == rx.compose(&r)?;
                fail_if(!ok, || format!("H={} X={x}", fmt_bits(h)))
            })
        })
    });
    ctx.check("tilde_induction", "Ind_H^G Ỹ Res_H^G = (Ind Y)~", || {
        first_failure(subgroups.iter(), |h| {
            let sub = g.subgroup_group(h)?;
            let (i, r) = (ind(&g, h)?, res(&g, h)?);
            first_failure(basis(&sub.group), |y| {
                let lhs = i.compose(&tilde(y))?.compose(&r)?;
                fail_if(lhs != tilde(&induce(&g, h, y)?), || format!("H={} Y={y}", fmt_bits(h)))
            })
        })
    });
    ctx.check("tilde_deflation", "X̃ Def_{G/N}^G = Def_{G/N}^G (Inf X)~", || {
        first_failure(lat.normals.iter(), |n| {
            let q = g.quotient(n)?;
            let d = def(&g, n)?;
            first_failure(basis(&q.group), |x| {
                let ok = tilde(x).compose(&d)? == d.compose(&tilde(&inflate(&g, n, x)?))?;
                fail_if(!ok, || format!("N={} X={x}", fmt_bits(n)))
            })
        })
    });
    ctx.check("tilde_def_inf", "Def_{G/N}^G X̃ Inf_{G/N}^G = (Def X)~", || {
        first_failure(lat.normals.iter(), |n| {
            let (d, i) = (def(&g, n)?, inf(&g, n)?);
            first_failure(xs.iter(), |x| {
                let ok = d.compose(&tilde(x))?.compose(&i)? == tilde(&deflate(x, n)?);
                fail_if(!ok, || format!("N={} X={x}", fmt_bits(n)))
            })
        })
    });
    let e = e_tilde(&g);
    ctx.check("e_restriction_vanishes", "Res_H^G ẽ_G^G = 0 and ẽ_G^G Ind_H^G = 0 for proper H", || {
        first_failure(proper_subgroup_reps(&g), |h| {
            let ok = res(&g, h)?.compose(&e)?.is_zero() && e.compose(&ind(&g, h)?)?.is_zero();
            fail_if(!ok, || fmt_bits(h))
        })
    });
    ctx.check("e_def_inf", "Def_{G/N}^G ẽ_G^G Inf_{G/N}^G = m_{G,N} ẽ_{G/N}", || {
        first_failure(lat.normals.iter(), |n| {
            let q = g.quotient(n)?;
            let lhs = def(&g, n)?.compose(&e)?.compose(&inf(&g, n)?)?;
            fail_if(lhs != e_tilde(&q.group).scale(&m_scalar(&g, n)?), || fmt_bits(n))
        })
    });
    let phi = g.frattini();
    ctx.check("e_frattini_commutes", "for N <= Φ(G): ẽ_{G/N} Def = Def ẽ_G and Inf ẽ_{G/N} = ẽ_G Inf", || {
        first_failure(lat.normals.iter().filter(|n| n.is_subset(&phi)), |n| {
            let q = g.quotient(n)?;
            let eq = e_tilde(&q.group);
            let (d, i) = (def(&g, n)?, inf(&g, n)?);
            let ok = eq.compose(&d)? == d.compose(&e)? && i.compose(&eq)? == e.compose(&i)?;
            fail_if(!ok, || fmt_bits(n))
        })
    });
    ctx.check("m_scalar_frattini", "m_{G,N} = 1 for N <= Φ(G)", || {
        first_failure(lat.normals.iter().filter(|n| n.is_subset(&phi)), |n| {
            fail_if(!m_scalar(&g, n)?.is_one(), || fmt_bits(n))
        })
    });
    let mut rng = ctx.rng("saturation");
    ctx.check("saturation", "ẽ_G [(G×H)/L] = 0 if p1(L) ≠ G and [(G×H)/L] ẽ_H = 0 if p2(L) ≠ H", || {
        first_failure(partners(cfg.partner_max_order)?, |h| {
            let sp = space(&g, h)?;
            let eh = e_tilde(h);
            first_failure(transitive_reps(&g, h, &cfg, &mut rng)?, |l| {
                let gs = Goursat::of(&sp, l);
                let x = BisetElt::transitive(&g, h, l)?;
                let left_bad = gs.p1 != g.whole() && !e.compose(&x)?.is_zero();
                let right_bad = gs.p2 != h.whole() && !x.compose(&eh)?.is_zero();
                fail_if(left_bad || right_bad, || format!("H={} L={}", h.name(), fmt_bits(l)))
            })
        })
    });
    ctx.check("factorization", "[(G×G)/L] = Ind Inf Iso Def Res through the Goursat data of L", || {
        let sp = space(&g, &g)?;
        first_failure(sp.all_classes(usize::MAX)?, |&c| {
            let l = sp.class(c).rep;
            fail_if(factorize(&g, &g, &l)? != BisetElt::transitive(&g, &g, &l)?, || fmt_bits(&l))
        })
    });
    ctx.check("e_tilde_idempotents", "the ẽ_H^G are orthogonal idempotents summing to the identity", || {
        let items: Vec<BisetElt> =
            lat.classes.iter().map(|c| Ok(tilde(&idempotent_e(&g, &c.rep)?))).collect::<Result<_>>()?;
        let r = check_system(&items, &identity(&g))?;
        fail_if(!r.passed(), || format!("{r:?}"))
    });
}

fn suite_sharp(ctx: &mut Ctx) {
    let p = ctx.g.clone();
    if !p.is_p_group() {
        ctx.skip("sharp_counts", "basis counts", "not a p-group");
        return;
    }
    ctx.check("sharp_counts", "classes of M <= Q×P with q(M)^@ ≅ L match the projection criterion", || {
        let at = atoric_quotient(&p)?;
        let l = at.group().clone();
        let qs: Vec<Arc<Group>> = catalog::all_groups()?
            .into_iter()
            .filter(|q| q.is_p_group() && same_prime(q, &p) && q.order() * p.order() <= SHARP_GATE)
            .collect();
        first_failure(qs.iter(), |q| {
            if !isomorphic(atoric_quotient(q)?.group(), &l) {
                return Ok(None);
            }
            let c = sharp_hom_dimension(&p, q, &l)?;
            fail_if(!c.agree(), || format!("Q={} {c:?}", q.name()))
        })
    });
}
