use std::collections::{BTreeMap, BTreeSet, HashSet};

use lietori::bounds::qhat_upper;
use lietori::matgrp::construct;
use lietori::taxonomy::enumerate_torus_classes;
use lietori::verifier::*;
use lietori::GroupSpec;
use permcore::{base_size_exact, coset_action, Limits, Perm};

fn all_match(cases: &[CaseResult]) {
    for c in cases {
        assert!(
            c.is_match(),
            "{} {:?} claimed {:?} computed {:?} {:?}",
            c.key,
            c.status,
            c.claimed,
            c.computed,
            c.notes
        );
    }
}

fn elements(gens: &[Perm], degree: usize) -> Vec<Perm> {
    let mut out = vec![Perm::identity(degree)];
    let mut seen: HashSet<Perm> = out.iter().cloned().collect();
    let mut i = 0;
    while i < out.len() {
        for s in gens {
            let y = out[i].mul(s);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

#[test]
fn intersection_claims() {
    all_match(&verify_intersections(&VerifyConfig::default()).unwrap());
}

#[test]
fn eta_claims() {
    all_match(&verify_eta_tables(&VerifyConfig::default()).unwrap());
}

#[test]
fn qhat_ledger_claims() {
    let v = verify_qhat_ledgers(&VerifyConfig::default()).unwrap();
    assert!(v.len() > 100);
    all_match(&v);
}

#[test]
fn b2_witness_claims() {
    all_match(&verify_b2_witnesses(&VerifyConfig::default()).unwrap());
}

#[test]
fn p_group_criterion_exceptions() {
    let v = verify_vdovin(&VerifyConfig::default()).unwrap();
    let failing: BTreeSet<(String, String)> = v
        .iter()
        .filter(|c| c.computed.get("p_group_intersection").map(String::as_str) == Some("false"))
        .map(|c| (c.spec.clone(), c.torus.clone().unwrap()))
        .collect();
    let expected: BTreeSet<(String, String)> = [
        ("L3(2)", "3;"),
        ("U3(3)", "1,1,1;"),
        ("U4(2)", "1,1,1,1;"),
        ("U5(2)", "1,1,1,1,1;"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(failing, expected);
    // the published list misses U3(3); everything else agrees with it
    let mism: Vec<&str> = v.iter().filter(|c| c.is_mismatch()).map(|c| c.key.as_str()).collect();
    assert_eq!(mism, ["vdovin/U3(3)/1,1,1;"]);
}

#[test]
fn u33_split_normaliser_meets_by_conjugation() {
    // every x in G, no coset machinery: |N ∩ N^x| is never 3
    let lim = Limits::default();
    let spec: GroupSpec = "U3(3)".parse().unwrap();
    let con = construct(&spec, &"1^3".parse().unwrap(), &lim).unwrap();
    let n = elements(con.n.generators(), con.degree());
    let g = elements(con.g.generators(), con.degree());
    assert_eq!((n.len(), g.len()), (96, 6048));
    let centre = n.iter().filter(|z| n.iter().all(|m| z.mul(m) == m.mul(z))).count();
    assert_eq!(centre, 1, "4^2:S3 has trivial centre, 4.S4 does not");
    let nset: HashSet<&Perm> = n.iter().collect();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &g {
        let xi = x.inverse();
        let k = n.iter().filter(|m| nset.contains(&xi.mul(m).mul(x))).count();
        *hist.entry(k).or_default() += 1;
    }
    assert_eq!(
        hist.into_iter().collect::<Vec<_>>(),
        [(4, 2304), (6, 3072), (16, 576), (96, 96)]
    );
}

#[test]
fn certified_b2_agrees_with_exact_base_size() {
    let lim = Limits::default();
    for name in [
        "L2(5)", "L2(7)", "L2(9)", "L2(11)", "L3(2)", "L3(3)", "U3(3)", "L4(2)", "U4(2)", "S4(3)",
    ] {
        let spec: GroupSpec = name.parse().unwrap();
        for cls in enumerate_torus_classes(&spec).unwrap() {
            let rep = qhat_upper(&spec, &cls, &lim).unwrap();
            let con = construct(&spec, &cls, &lim).unwrap();
            let act = coset_action(&con.g, &con.n, &lim).unwrap();
            let b = base_size_exact(&act, 6, &lim).unwrap().exact().unwrap();
            if rep.certified() {
                assert_eq!(b, 2, "{name} {cls}");
            }
        }
    }
}

#[test]
fn non_table1_pairs_have_base_size_two() {
    let cfg = VerifyConfig::default();
    let table1: Vec<(String, String)> = claims()
        .unwrap()
        .table1
        .iter()
        .map(|r| {
            (
                r.group.clone(),
                r.torus.parse::<lietori::TorusClass>().unwrap().to_string(),
            )
        })
        .collect();
    for name in [
        "L2(7)", "L2(8)", "L3(2)", "L3(3)", "U3(3)", "U3(4)", "L4(2)", "U4(2)", "S4(3)", "S6(2)",
    ] {
        let spec: GroupSpec = name.parse().unwrap();
        for cls in enumerate_torus_classes(&spec).unwrap() {
            if table1.contains(&(name.to_string(), cls.to_string())) {
                continue;
            }
            let c = verify_b2(&spec, &cls, "b = 2 outside the table", &cfg);
            assert!(c.is_match(), "{name} {cls}: {:?} {:?}", c.computed, c.notes);
        }
    }
}
