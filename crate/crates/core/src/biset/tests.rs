use super::*;
use crate::burnside::{idempotent_e, BurnsideElt};
use crate::catalog::get;
use crate::group::{is_isomorphic, GroupMap};
use crate::rational::q;

fn sub_of_order(g: &Group, n: usize) -> Bits {
    *g.lattice().all.iter().find(|h| h.len() == n).unwrap()
}

#[test]
fn goursat_examples() {
    let g = get("D8").unwrap();
    let sp = space(&g, &g).unwrap();
    let d = delta(&g, &g.whole()).unwrap();
    let gs = Goursat::of(&sp, &d);
    assert_eq!((gs.p1, gs.p2, gs.k1, gs.k2), (g.whole(), g.whole(), g.trivial(), g.trivial()));
    assert!(is_isomorphic(&goursat::q_group(&sp, &d).unwrap().group, &g).is_some());

    let z = g.center();
    let dn = delta_m(&g, &z, &g.whole()).unwrap();
    let gs = Goursat::of(&sp, &dn);
    assert_eq!((gs.p1, gs.p2, gs.k1, gs.k2), (g.whole(), g.whole(), z, z));
    assert_eq!(gs.q_order(), 4);
    let qg = goursat::q_group(&sp, &dn).unwrap();
    assert!(is_isomorphic(&qg.group, &g.quotient(&z).unwrap().group).is_some());

    let full = sp.ambient.whole();
    assert_eq!(goursat::q_group(&sp, &full).unwrap().group.order(), 1);
    // class info agrees with direct computation
    let c = sp.class_of(&dn);
    assert_eq!(sp.class(c).goursat, gs);
    // |L| = |p1||k2|
    for l in &sp.ambient.lattice().all {
        let gs = Goursat::of(&sp, l);
        assert_eq!(l.len(), gs.p1.len() * gs.k2.len());
        assert_eq!(l.len(), gs.p2.len() * gs.k1.len());
    }
}

#[test]
fn star_examples() {
    let g = get("Q8").unwrap();
    let sp = space(&g, &g).unwrap();
    let z = g.center();
    let x = sub_of_order(&g, 4);
    let dg = delta(&g, &g.whole()).unwrap();
    for l in [delta(&g, &x).unwrap(), delta_m(&g, &z, &x).unwrap()] {
        assert_eq!(star(&sp, &dg, &sp, &l).unwrap(), l);
    }
    // Δ_Z(G) * Δ(X) = {(xm, x)}
    let s = star(&sp, &delta_m(&g, &z, &g.whole()).unwrap(), &sp, &delta(&g, &x).unwrap()).unwrap();
    let want: Bits = x.iter().flat_map(|a| z.iter().map(move |m| (a, m))).map(|(a, m)| sp.pair(g.mul(a, m), a)).collect();
    assert_eq!(s, want);
    // Δ_N * Δ_M = Δ_{NM}
    let d8 = get("D8").unwrap();
    let sp8 = space(&d8, &d8).unwrap();
    let normals = d8.lattice().normals.clone();
    for n in &normals {
        for m in &normals {
            let nm = d8.product_set(n, m);
            let lhs = star(
                &sp8,
                &delta_m(&d8, n, &d8.whole()).unwrap(),
                &sp8,
                &delta_m(&d8, m, &d8.whole()).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, delta_m(&d8, &nm, &d8.whole()).unwrap());
        }
    }
}

#[test]
fn composition_examples() {
    let g = get("D8").unwrap();
    let id = identity(&g);
    let a = BisetElt::transitive(&g, &g, &delta_m(&g, &g.center(), &sub_of_order(&g, 4)).unwrap()).unwrap();
    assert_eq!(id.compose(&a).unwrap(), a);
    assert_eq!(a.compose(&id).unwrap(), a);
    for n in g.lattice().normals.clone() {
        let lhs = inf(&g, &n).unwrap().compose(&def(&g, &n).unwrap()).unwrap();
        let want = BisetElt::transitive(&g, &g, &delta_m(&g, &n, &g.whole()).unwrap()).unwrap();
        assert_eq!(lhs, want);
    }
    // Res ∘ Ind for C2 <= C4: two double cosets, both giving Δ(C2)
    let c4 = get("C4").unwrap();
    let h = sub_of_order(&c4, 2);
    let ri = res(&c4, &h).unwrap().compose(&ind(&c4, &h).unwrap()).unwrap();
    let hg = c4.subgroup_group(&h).unwrap().group.clone();
    assert_eq!(ri, identity(&hg).scale(&qi(2)));
}

#[test]
fn reversed_representatives_agree() {
    let g = get("S3").unwrap();
    let sp = space(&g, &g).unwrap();
    let classes = sp.all_classes(FULL_ENUMERATION_GATE).unwrap();
    for &l in &classes {
        for &m in &classes {
            let (a, b) = (BisetElt::from_class(&sp, l), BisetElt::from_class(&sp, m));
            assert_eq!(a.compose(&b).unwrap(), a.compose_reversed(&b).unwrap());
        }
    }
}

#[test]
fn mismatched_composition() {
    let (c2, c3) = (get("C2").unwrap(), get("C3").unwrap());
    assert!(matches!(identity(&c2).compose(&identity(&c3)), Err(Error::GroupMismatch(_))));
}

#[test]
fn opposites() {
    let g = get("S3").unwrap();
    let h = sub_of_order(&g, 2);
    assert_eq!(ind(&g, &h).unwrap().opposite(), res(&g, &h).unwrap());
    assert_eq!(identity(&g).opposite(), identity(&g));
    for n in g.lattice().normals.clone() {
        let d = BisetElt::transitive(&g, &g, &delta_m(&g, &n, &g.whole()).unwrap()).unwrap();
        assert_eq!(d.opposite(), d);
    }
    let sp = space(&g, &g).unwrap();
    let classes = sp.all_classes(FULL_ENUMERATION_GATE).unwrap();
    for &l in &classes {
        let a = BisetElt::from_class(&sp, l);
        assert_eq!(a.opposite().opposite(), a);
        for &m in classes.iter().step_by(3) {
            let b = BisetElt::from_class(&sp, m);
            assert_eq!(a.compose(&b).unwrap().opposite(), b.opposite().compose(&a.opposite()).unwrap());
        }
    }
}

#[test]
fn tilde_is_a_ring_map() {
    for name in ["C2", "S3", "D8"] {
        let g = get(name).unwrap();
        assert_eq!(tilde(&BurnsideElt::one(&g)), identity(&g));
        let free = tilde(&BurnsideElt::basis(&g, &g.trivial()).unwrap());
        let sp = space(&g, &g).unwrap();
        assert_eq!(free, BisetElt::from_class(&sp, sp.class_of(&Bits::singleton(0))));
        let reps: Vec<Bits> = g.lattice().classes.iter().map(|c| c.rep).collect();
        for x in &reps {
            for y in &reps {
                let (bx, by) = (BurnsideElt::basis(&g, x).unwrap(), BurnsideElt::basis(&g, y).unwrap());
                assert_eq!(tilde(&bx.mul(&by).unwrap()), tilde(&bx).compose(&tilde(&by)).unwrap());
            }
        }
        let e = tilde(&idempotent_e(&g, &g.whole()).unwrap());
        assert_eq!(e.compose(&e).unwrap(), e);
    }
}

#[test]
fn standard_biset_degenerate_cases() {
    let g = get("D8").unwrap();
    assert_eq!(iso(&g, &g, &GroupMap::identity(8)).unwrap(), identity(&g));
    let ii = indinf(&g, &g.whole(), &g.trivial()).unwrap();
    // G/1 is a different group object than G, but the biset is the graph
    // of the canonical isomorphism
    let q = g.section_group(&g.whole(), &g.trivial()).unwrap();
    let back = iso(&q.group, &g, &GroupMap { images: q.lift.clone() }).unwrap();
    assert_eq!(ii.compose(&iso(&g, &q.group, &q.projection_map()).unwrap()).unwrap(), identity(&g));
    assert_eq!(back.compose(&ii.opposite()).unwrap(), identity(&g));
    let bad = GroupMap { images: vec![0; 8] };
    assert!(iso(&g, &g, &bad).is_err());
}

#[test]
fn factorization_matches() {
    for (h, g) in [("S3", "C2"), ("D8", "C4"), ("C4", "D8"), ("S3", "S3")] {
        let (h, g) = (get(h).unwrap(), get(g).unwrap());
        let sp = space(&h, &g).unwrap();
        for c in sp.all_classes(FULL_ENUMERATION_GATE).unwrap() {
            let rep = sp.class(c).rep;
            assert_eq!(factorize(&h, &g, &rep).unwrap(), BisetElt::from_class(&sp, c));
        }
    }
}

#[test]
fn canonical_classes() {
    let g = get("S3").unwrap();
    let sp = space(&g, &g).unwrap();
    // graphs of two inner automorphisms
    let t = (0..6).find(|&x| g.elt_order(x) == 3).unwrap();
    let s = (0..6).find(|&x| g.elt_order(x) == 2).unwrap();
    let graph = |x: usize| -> Bits { (0..6).map(|y| sp.pair(g.conj(x, y), y)).collect() };
    assert_eq!(sp.canonical(&graph(t)), sp.canonical(&graph(s)));
    // normal subgroups are their own representative
    let dn = delta_m(&g, &g.whole(), &g.whole()).unwrap();
    assert_eq!(sp.canonical(&dn), dn);
    let v = get("C2xC2").unwrap();
    let spv = space(&v, &v).unwrap();
    let d = delta(&v, &sub_of_order(&v, 2)).unwrap();
    assert_eq!(spv.canonical(&d), d);
}

#[test]
fn json_roundtrip() {
    let g = get("S3").unwrap();
    let e = tilde(&idempotent_e(&g, &g.whole()).unwrap()).add(&identity(&g).scale(&q(-3, 7))).unwrap();
    let j = e.to_json();
    let text = serde_json::to_string(&j).unwrap();
    let back: BisetJson = serde_json::from_str(&text).unwrap();
    assert_eq!(BisetElt::from_json(&back, &g, &g).unwrap(), e);
    assert!(j.terms.iter().any(|t| t.coeff.contains('/')));
    let c2 = get("C2").unwrap();
    assert!(BisetElt::from_json(&back, &c2, &c2).is_err());
    let mut broken = back.clone();
    broken.terms[0].subgroup = vec![1];
    assert!(BisetElt::from_json(&broken, &g, &g).is_err());
}

#[test]
fn sigma_routes_agree() {
    for name in ["C4", "S3", "D8", "Q8", "C2xC2"] {
        let g = get(name).unwrap();
        let full = sigma_classes(&g, FULL_ENUMERATION_GATE).unwrap();
        let synth = sigma_synthesized::<rand_chacha::ChaCha8Rng>(&g, None).unwrap();
        let mut a = full.clone();
        let mut b = synth.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{name}");
    }
}
