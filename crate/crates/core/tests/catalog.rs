//! Catalog groups against known invariants, and extension by a user file.

use burnside::atoric::{atoric_quotient, identify, is_atoric};
use burnside::catalog;
use burnside::group::{automorphisms, is_nilpotent, isomorphic};

/// name, order, subgroups, subgroup classes, normal subgroups, |Φ|, |Z|, |Out|
const KNOWN: &[(&str, usize, usize, usize, usize, usize, usize, usize)] = &[
    ("1", 1, 1, 1, 1, 1, 1, 1),
    ("C2", 2, 2, 2, 2, 1, 2, 1),
    ("C3", 3, 2, 2, 2, 1, 3, 2),
    ("C4", 4, 3, 3, 3, 2, 4, 2),
    ("C2xC2", 4, 5, 5, 5, 1, 4, 6),
    ("C5", 5, 2, 2, 2, 1, 5, 4),
    ("S3", 6, 6, 4, 3, 1, 1, 1),
    ("C6", 6, 4, 4, 4, 1, 6, 2),
    ("C7", 7, 2, 2, 2, 1, 7, 6),
    ("C8", 8, 4, 4, 4, 4, 8, 4),
    ("C4xC2", 8, 8, 8, 8, 2, 8, 8),
    ("C2^3", 8, 16, 16, 16, 1, 8, 168),
    ("D8", 8, 10, 8, 6, 2, 2, 2),
    ("Q8", 8, 6, 6, 6, 2, 2, 6),
    ("C9", 9, 3, 3, 3, 3, 9, 6),
    ("C3xC3", 9, 6, 6, 6, 1, 9, 48),
    ("D10", 10, 8, 4, 3, 1, 1, 2),
    ("C12", 12, 6, 6, 6, 2, 12, 4),
    ("A4", 12, 10, 5, 3, 1, 1, 2),
    ("D12", 12, 16, 10, 7, 1, 2, 2),
    ("C16", 16, 5, 5, 5, 8, 16, 8),
    ("C4xC4", 16, 15, 15, 15, 4, 16, 96),
    ("C4xC2xC2", 16, 27, 27, 27, 2, 16, 192),
    ("C2^4", 16, 67, 67, 67, 1, 16, 20160),
    ("D8xC2", 16, 35, 27, 19, 2, 4, 16),
    ("Q8xC2", 16, 19, 19, 19, 2, 4, 48),
    ("M4(2)", 16, 11, 10, 9, 4, 4, 4),
];

#[test]
fn builtin_groups_have_known_invariants() {
    // built-ins come first; another test may register extra entries
    let names: Vec<String> = catalog::entries().iter().take(KNOWN.len()).map(|e| e.name.clone()).collect();
    assert_eq!(names, KNOWN.iter().map(|k| k.0).collect::<Vec<_>>());
    for &(name, order, subs, classes, normals, phi, z, out) in KNOWN {
        let g = catalog::get(name).unwrap();
        let l = g.lattice();
        let got = (g.order(), l.all.len(), l.classes.len(), l.normals.len(), g.frattini().len(), g.center().len());
        assert_eq!(got, (order, subs, classes, normals, phi, z), "{name}");
        assert_eq!(automorphisms(&g).unwrap().out_order, out, "{name}");
    }
}

#[test]
fn catalog_groups_are_pairwise_non_isomorphic() {
    let gs: Vec<_> = KNOWN.iter().map(|k| catalog::get(k.0).unwrap()).collect();
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i + 1..] {
            assert!(a.order() != b.order() || !isomorphic(a, b), "{} ≅ {}", a.name(), b.name());
        }
    }
}

#[test]
fn atoric_status_of_p_groups() {
    let atoric = ["1", "C4", "C8", "D8", "Q8", "C9", "C16", "C4xC4", "M4(2)"];
    for &(name, ..) in KNOWN {
        let g = catalog::get(name).unwrap();
        if !g.is_p_group() {
            assert_eq!(is_nilpotent(&g), ["C6", "C12"].contains(&name), "{name}");
            continue;
        }
        assert_eq!(is_atoric(&g).unwrap(), atoric.contains(&g.name()), "{}", g.name());
        let at = identify(atoric_quotient(&g).unwrap().group());
        assert!(at.is_some(), "{}", g.name());
    }
    let cases = [("D8xC2", "D8"), ("Q8xC2", "Q8"), ("C4xC2xC2", "C4"), ("C2^4", "1")];
    for (p, want) in cases {
        let at = atoric_quotient(&catalog::get(p).unwrap()).unwrap();
        assert_eq!(identify(at.group()).as_deref(), Some(want), "{p}");
    }
}

#[test]
fn extra_entries_and_aliases() {
    let json = r#"[{"name": "V4perm", "degree": 4, "generators": [[1,0,3,2],[2,3,0,1]]}]"#;
    catalog::register(catalog::parse_catalog(json).unwrap());
    let v = catalog::get("V4perm").unwrap();
    assert!(isomorphic(&v, &catalog::get("C2xC2").unwrap()));
    assert_eq!(catalog::get("C2xD8").unwrap().id(), catalog::get("D8xC2").unwrap().id());
    assert!(catalog::get("nonsense").is_err());
    assert!(catalog::parse_catalog(r#"[{"name": "bad", "degree": 3, "generators": [[0,0,1]]}]"#)
        .and_then(|e| e[0].build())
        .is_err());
}
