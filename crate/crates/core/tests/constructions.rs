use lietori::matgrp::{classical_group, construct, expected_point_count, PointAction};
use lietori::taxonomy::{enumerate_torus_classes, torus_data};
use lietori::GroupSpec;
use num_bigint::BigUint;
use permcore::Limits;

fn all_classes(name: &str) {
    let spec: GroupSpec = name.parse().unwrap();
    let lim = Limits::default();
    for cls in enumerate_torus_classes(&spec).unwrap() {
        let c = construct(&spec, &cls, &lim).unwrap_or_else(|e| panic!("{name} {cls}: {e}"));
        assert_eq!(c.g.order(), spec.group_order());
        assert_eq!(c.n.order(), torus_data(&spec, &cls).unwrap().normaliser_order);
        assert_eq!(BigUint::from(c.degree()), expected_point_count(&spec).unwrap());
        for m in &c.normaliser_mats {
            assert!(c.model.preserves_form(m));
        }
    }
}

#[test]
fn linear_groups() {
    for s in [
        "L2(4)", "L2(5)", "L2(7)", "L2(8)", "L2(9)", "L2(16)", "L2(32)", "L3(2)", "L3(3)", "L4(2)",
    ] {
        all_classes(s);
    }
}

#[test]
fn unitary_groups() {
    for s in ["U3(3)", "U4(2)", "U5(2)"] {
        all_classes(s);
    }
}

#[test]
fn symplectic_groups() {
    for s in ["S4(3)", "S4(4)", "S6(2)"] {
        all_classes(s);
    }
}

#[test]
fn orthogonal_groups() {
    for s in ["O8+(2)", "O8-(2)"] {
        all_classes(s);
    }
}

#[test]
fn known_normaliser_orders() {
    let lim = Limits::default();
    for (s, c, n) in [
        ("L3(2)", "3", 21u64),
        ("U4(2)", "1^4", 648),
        ("O8-(2)", "1;1^3", 1296),
        ("O8-(2)", ";4", 68),
    ] {
        let spec: GroupSpec = s.parse().unwrap();
        let con = construct(&spec, &c.parse().unwrap(), &lim).unwrap();
        assert_eq!(con.n.order(), BigUint::from(n), "{s} {c}");
    }
}

#[test]
fn generators_preserve_forms() {
    let lim = Limits::default();
    for s in ["L3(4)", "U3(4)", "S6(3)", "O6-(2)", "O10+(2)"] {
        let spec: GroupSpec = s.parse().unwrap();
        let m = classical_group(&spec, &lim).unwrap();
        assert!(!m.gens.is_empty());
        for g in &m.gens {
            assert!(m.preserves_form(g), "{s}");
        }
        let pts = PointAction::new(&m).unwrap();
        assert_eq!(BigUint::from(pts.degree()), expected_point_count(&spec).unwrap(), "{s}");
    }
}

#[test]
fn unitary_six() {
    all_classes("U6(2)");
}
