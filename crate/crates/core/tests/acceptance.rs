//! Acceptance run: ten criteria, one test each, checked exactly. Each test
//! prints a PASS/FAIL line (visible with `--nocapture`).

use std::sync::Arc;
use std::time::Instant;

use burnside::atoric::sharp_hom_dimension;
use burnside::catalog;
use burnside::verify::{self, phi_one_dimension, Config, Report, Status};
use burnside::Group;

fn groups(max_order: usize) -> Vec<Arc<Group>> {
    catalog::groups_up_to(max_order).unwrap()
}

/// Runs `suite` on `gs`; fails on any failing check and on any of `required`
/// not passing for a group where `applies` holds.
fn suite(gs: &[Arc<Group>], suite: &str, required: &[&str], applies: impl Fn(&Group) -> bool) -> Result<(), String> {
    let cfg = Config::default();
    let reports: Vec<Report> = verify::run_many(gs, &[suite.to_string()], &cfg).map_err(|e| e.to_string())?;
    for r in &reports {
        if let Some(c) = r.failures().next() {
            return Err(format!("{}: {} ({})", r.group, c.name, c.witness.as_deref().unwrap_or("")));
        }
        let g = catalog::get(&r.group).unwrap();
        if !applies(&g) {
            continue;
        }
        for name in required {
            match r.checks.iter().find(|c| c.name == *name) {
                Some(c) if c.status == Status::Pass => {}
                Some(c) => return Err(format!("{}: {} is {:?}", r.group, name, c.status)),
                None => return Err(format!("{}: {} missing", r.group, name)),
            }
        }
    }
    Ok(())
}

fn out_dimensions() -> Result<(), String> {
    for (name, want) in [("C4", None), ("C8", None), ("C9", None), ("Q8", Some(6))] {
        let g = catalog::get(name).unwrap();
        let out = burnside::group::automorphisms(&g).map_err(|e| e.to_string())?.out_order;
        let d = phi_one_dimension(&g, Config::default().full_basis_max_order).map_err(|e| e.to_string())?;
        if d != out || want.is_some_and(|w| w != d) {
            return Err(format!("{name}: dimension {d}, |Out| {out}"));
        }
    }
    Ok(())
}

fn sharp_counts() -> Result<(), String> {
    let mut triples = vec![("C4", "C4", "C4"), ("C4xC2", "C4", "C4"), ("Q8", "Q8", "Q8")];
    let elementary = ["C2", "C2xC2", "C2^3"];
    for p in elementary {
        for q in elementary {
            triples.push((p, q, "1"));
        }
    }
    for (p, q, l) in triples {
        let (p, q, l) = (catalog::get(p).unwrap(), catalog::get(q).unwrap(), catalog::get(l).unwrap());
        let c = sharp_hom_dimension(&p, &q, &l).map_err(|e| e.to_string())?;
        if !c.agree() {
            return Err(format!("({}, {}, {}): {c:?}", p.name(), q.name(), l.name()));
        }
    }
    Ok(())
}

fn report(name: &str, f: impl FnOnce() -> Result<(), String>) {
    let t = Instant::now();
    let r = f();
    let secs = t.elapsed().as_secs_f64();
    match &r {
        Ok(()) => println!("PASS  criterion {name} ({secs:.1}s)"),
        Err(w) => println!("FAIL  criterion {name} ({secs:.1}s): {w}"),
    }
    assert!(r.is_ok(), "criterion {name} failed: {}", r.unwrap_err());
}

#[test]
fn criterion_01_burnside_ring_idempotents() {
    report("1 e-idempotents of the Burnside ring", || {
        suite(&groups(16), "burnside", &["e_orthogonal_idempotents", "e_sum_to_unit", "e_marks_indicator"], |_| true)
    });
}

#[test]
fn criterion_02_phi_idempotents() {
    report("2 phi idempotents sum to e-tilde", || suite(&groups(16), "phi", &["phi_orthogonal_idempotents"], |_| true));
}

#[test]
fn criterion_03_epsilon_idempotents() {
    report("3 epsilon idempotents and closed formula", || {
        suite(&groups(16), "epsilon", &["epsilon_orthogonal_idempotents", "epsilon_closed_form"], |_| true)
    });
}

#[test]
fn criterion_04_phi_one_central() {
    report("4 phi_1 is central for nilpotent groups", || {
        suite(&groups(16), "central", &["phi_one_central"], burnside::group::is_nilpotent)
    });
}

#[test]
fn criterion_05_out_dimension() {
    report("5 dimension of phi_1 E(G) equals |Out(G)|", out_dimensions);
}

#[test]
fn criterion_06_b_l_idempotents() {
    report("6 b_L idempotents", || {
        suite(
            &groups(16),
            "bL",
            &["b_l_orthogonal_idempotents", "b_l_nonzero_iff_subquotient", "b_l_commutes"],
            |g| g.is_p_group(),
        )
    });
}

#[test]
fn criterion_07_evaluation() {
    report("7 evaluation decomposition of QB", || suite(&groups(16), "evaluation", &["decomposition"], |_| true));
}

#[test]
fn criterion_08_atoric() {
    report("8 atoric groups and quotients", || {
        suite(
            &groups(16),
            "atoric",
            &[
                "atoric_conditions_agree",
                "atoric_quotient_well_defined",
                "atoric_quotient_idempotent",
                "subquotients_monotone",
                "subgroup_criteria",
            ],
            |g| g.is_p_group(),
        )
    });
}

#[test]
fn criterion_09_tilde_identities() {
    report("9 tilde and e-tilde identities", || {
        suite(
            &groups(8),
            "lemmas",
            &[
                "tilde_restriction",
                "tilde_induction",
                "tilde_deflation",
                "tilde_def_inf",
                "e_restriction_vanishes",
                "e_def_inf",
                "e_frattini_commutes",
                "m_scalar_frattini",
                "saturation",
            ],
            |_| true,
        )
    });
}

#[test]
fn criterion_10_sharp_counts() {
    report("10 sharp-category basis counts", sharp_counts);
}
