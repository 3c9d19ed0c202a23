//! Every counting bound must dominate the exact count in the constructed `N`,
//! and every class size lower bound must sit below the exact size.

mod common;

use lietori::arith::big;
use lietori::bounds::{ir_bound_linear, ir_bound_linear_sound};
use lietori::matgrp::construct;
use lietori::GroupSpec;
use permcore::{exhaustive_classes, Limits};

fn check_linear(name: &str, only: Option<&str>) {
    let bad = common::linear_a_side_violations(name, only);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn linear_a_side_small() {
    for g in [
        "L2(4)", "L2(5)", "L2(7)", "L2(8)", "L2(9)", "L2(11)", "L2(13)", "L2(16)", "L3(2)", "L3(3)", "L3(4)",
    ] {
        check_linear(g, None);
    }
}

#[test]
fn unitary_a_side_small() {
    for g in ["U3(3)", "U3(4)", "U3(5)", "L4(2)", "U4(2)"] {
        check_linear(g, None);
    }
}

#[test]
fn l43_class_certified_by_the_generic_strategy() {
    check_linear("L4(3)", Some("2,1,1"));
}

#[test]
fn symplectic_ir_bounds() {
    for g in ["S4(3)", "S4(4)", "S6(2)"] {
        let bad = common::symplectic_ir_violations(g);
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}

#[test]
fn class_size_lower_bounds_hold() {
    for g in [
        "L2(8)", "L2(9)", "L3(2)", "L3(3)", "L3(4)", "L4(2)", "L4(3)", "U3(3)", "U4(2)", "U4(3)", "U5(2)", "L5(2)",
        "L6(2)", "U6(2)", "L6(3)", "L7(2)",
    ] {
        let bad = common::b_side_violations(g);
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}

#[test]
fn published_ir_sum_fails_when_r_divides_n() {
    // N = 13:3 in L3(3): all 26 elements outside the 13-cycle subgroup have
    // order 3
    let spec: GroupSpec = "L3(3)".parse().unwrap();
    let lim = Limits::default();
    let con = construct(&spec, &"3".parse().unwrap(), &lim).unwrap();
    let i3: u64 = exhaustive_classes(&con.n, &lim, true)
        .unwrap()
        .iter()
        .filter(|k| k.element_order == big(3))
        .map(|k| k.size)
        .sum();
    assert_eq!(i3, 26);
    assert_eq!(ir_bound_linear(3, 3, 3), big(24));
    assert_eq!(ir_bound_linear_sound(3, 3, 3), big(16 + 2 * 16));
}
