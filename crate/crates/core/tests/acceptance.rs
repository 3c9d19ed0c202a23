//! Acceptance run: one PASS/FAIL line per criterion, followed by the detail
//! needed to diagnose a failure. Runs without the libtest harness so the
//! summary is always printed.
//!
//! Criterion 4 is known to fail: the p-group criterion also fails for
//! U3(3) on the cosets of 4^2:S3, which the published list of exceptions
//! omits. The run exits successfully only when every other criterion passes
//! and criterion 4 fails in exactly that way.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lietori::arith::{big, pow};
use lietori::bounds::{exact_meets, ir_bound_linear, ir_bound_linear_sound};
use lietori::matgrp::construct;
use lietori::taxonomy::{enumerate_torus_classes, steinberg_sum, torus_data};
use lietori::verifier::{
    claims, verify_eta_tables, verify_intersections, verify_qhat_ledgers, verify_table1, verify_table3, verify_vdovin,
    CaseResult, VerifyConfig,
};
use lietori::{Family, GroupSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use permcore::Limits;

struct Outcome {
    id: u8,
    title: &'static str,
    pass: bool,
    elapsed: Duration,
    detail: Vec<String>,
}

fn timed(id: u8, title: &'static str, f: impl FnOnce(&mut Vec<String>) -> bool) -> Outcome {
    let t = Instant::now();
    let mut detail = Vec::new();
    let pass = f(&mut detail);
    Outcome {
        id,
        title,
        pass,
        elapsed: t.elapsed(),
        detail,
    }
}

/// Mismatches and skips, formatted for the detail section.
fn problems(cases: &[CaseResult], detail: &mut Vec<String>) -> bool {
    let mut ok = true;
    for c in cases.iter().filter(|c| !c.is_match()) {
        ok = false;
        detail.push(format!(
            "{}: claimed {:?}, computed {:?}, {:?}",
            c.key, c.claimed, c.computed, c.notes
        ));
    }
    ok
}

fn corpus() -> Vec<GroupSpec> {
    let mut names = claims().unwrap().vdovin.groups;
    names.extend(["O8-(2)", "L3(3)", "L4(2)"].map(String::from));
    names.iter().map(|n| n.parse().unwrap()).collect()
}

fn criterion1() -> Outcome {
    timed(1, "torus data for O8-(2)", |d| {
        let cases = verify_table3().unwrap();
        d.push(format!("{} cases", cases.len()));
        problems(&cases, d) && cases.len() == 10
    })
}

fn criterion2(cfg: &VerifyConfig) -> (Outcome, Vec<CaseResult>) {
    let mut rows = Vec::new();
    let out = timed(2, "exact base sizes b >= 3", |d| {
        rows = verify_table1(cfg).unwrap();
        let ok = problems(&rows, d);
        for r in &rows {
            d.push(format!(
                "{}: b = {}",
                r.key,
                r.computed.get("b").map_or("?", String::as_str)
            ));
        }
        ok && rows.len() == 11
    });
    // all rows run in parallel, so the wall time bounds both the desk-scale
    // rows (10 min) and the U6(2) row (30 min)
    let pass = out.pass && out.elapsed < Duration::from_secs(600);
    (Outcome { pass, ..out }, rows)
}

fn criterion3(cfg: &VerifyConfig) -> Outcome {
    timed(3, "intersection orders and subdegrees", |d| {
        let cases = verify_intersections(cfg).unwrap();
        for c in &cases {
            d.push(format!("{}: {:?}", c.key, c.computed));
        }
        problems(&cases, d)
    })
}

/// Returns the outcome and whether the failure is exactly the known one.
fn criterion4(cfg: &VerifyConfig) -> (Outcome, bool) {
    let mut known = false;
    let out = timed(4, "p-group criterion fails exactly for the three listed pairs", |d| {
        let cases = verify_vdovin(cfg).unwrap();
        let failing: BTreeSet<String> = cases
            .iter()
            .filter(|c| c.computed.get("p_group_intersection").map(String::as_str) == Some("false"))
            .map(|c| format!("{} {}", c.spec, c.torus.as_deref().unwrap_or("")))
            .collect();
        d.push(format!(
            "{} pairs over {} groups",
            cases.len(),
            claims().unwrap().vdovin.groups.len()
        ));
        d.push(format!("no p-group intersection for: {failing:?}"));
        let mism: Vec<&CaseResult> = cases.iter().filter(|c| !c.is_match()).collect();
        for c in &mism {
            d.push(format!("mismatch {}: {}", c.key, c.notes.join("; ")));
        }
        if mism.len() == 1 && mism[0].key == "vdovin/U3(3)/1,1,1;" {
            known = true;
            d.push(
                "analysis: in U3(3) with p = 3, N = 4^2:S3 has order 96 and the values of |N ∩ N^x| for x outside N \
                 are 4, 6 and 16 (also confirmed by running over all of G), none a power of 3, so the pair is a fourth \
                 exception and the criterion cannot hold as stated"
                    .into(),
            );
        }
        mism.is_empty()
    });
    (out, known)
}

fn criterion5(cfg: &VerifyConfig) -> Outcome {
    timed(5, "certified eta_G(t) < 1", |d| {
        let cases = verify_eta_tables(cfg).unwrap();
        for c in &cases {
            d.push(format!("{}: {}", c.key, c.notes.join("; ")));
        }
        let thirds = cases.iter().filter(|c| c.key.ends_with("/1/3")).count();
        d.push(format!("{thirds} specs with n >= 6 checked at t = 1/3"));
        problems(&cases, d) && thirds > 0
    })
}

fn criterion6(cfg: &VerifyConfig, table1: &[CaseResult]) -> Outcome {
    timed(6, "Qhat ledgers certify b = 2 and stay inconclusive when b >= 3", |d| {
        let cases = verify_qhat_ledgers(cfg).unwrap();
        d.push(format!("{} ledger cases", cases.len()));
        let mut ok = problems(&cases, d);
        for r in table1 {
            let v = r.computed.get("qhat").map(String::as_str);
            if v != Some("inconclusive") {
                ok = false;
                d.push(format!("{}: qhat verdict {v:?}", r.key));
            }
        }
        ok && table1.len() == 11
    })
}

fn criterion7() -> Outcome {
    timed(7, "class oracle and bound domination", |d| {
        let mut ok = true;
        for g in ["L3(2)", "L3(3)", "L4(2)", "U3(3)", "U4(2)"] {
            match common::class_lists_agree(g) {
                Ok(n) => d.push(format!("{g}: {n} prime-order classes agree with enumeration")),
                Err(e) => {
                    ok = false;
                    d.push(e);
                }
            }
        }
        let mut bad = Vec::new();
        for g in [
            "L2(4)", "L2(8)", "L2(16)", "L3(2)", "L3(3)", "L3(4)", "L4(2)", "U3(3)", "U4(2)",
        ] {
            bad.extend(common::linear_a_side_violations(g, None));
            bad.extend(common::b_side_violations(g));
        }
        for g in ["S4(3)", "S6(2)"] {
            bad.extend(common::symplectic_ir_violations(g));
        }
        d.push(format!("{} bound violations", bad.len()));
        ok &= bad.is_empty();
        d.extend(bad);
        // the published i_r sum, without the correction for r | n
        let lim = Limits::default();
        for g in ["L3(3)", "U3(3)"] {
            let spec: GroupSpec = g.parse().unwrap();
            for cls in enumerate_torus_classes(&spec).unwrap() {
                let con = construct(&spec, &cls, &lim).unwrap();
                let i3: u64 = exact_meets(&con, &lim)
                    .unwrap()
                    .iter()
                    .filter(|m| m.order == 3)
                    .map(|m| m.meet)
                    .sum();
                let published = ir_bound_linear(3, spec.q(), 3);
                if big(i3) > published {
                    d.push(format!(
                        "note: {g} {cls}: i_3(N) = {i3} exceeds the uncorrected sum {published}; corrected bound {}",
                        ir_bound_linear_sound(3, spec.q(), 3)
                    ));
                }
            }
        }
        ok
    })
}

fn criterion8() -> Outcome {
    timed(8, "structural identities", |d| {
        let mut bad = Vec::new();
        let mut checked = 0;
        for n in 2..=6 {
            for q in [2, 3, 4, 5] {
                let s = GroupSpec::new(Family::LinearA, n, q).unwrap();
                let want = BigRational::from_integer(BigInt::from(pow(q, 2 * s.positive_root_count() as u32)));
                checked += 1;
                if steinberg_sum(&s).unwrap() != want {
                    bad.push(format!("Steinberg count fails for GL_{n}({q})"));
                }
            }
        }
        d.push(format!("Steinberg identity for {checked} GL_n(q)"));
        let lim = Limits::default();
        let mut classes = 0;
        for spec in corpus() {
            for cls in enumerate_torus_classes(&spec).unwrap() {
                classes += 1;
                let td = torus_data(&spec, &cls).unwrap();
                if td.normaliser_order != &td.torus_order * &td.f_centralizer_order {
                    bad.push(format!("{spec} {cls}: |N| != |T||R|"));
                }
                let con = construct(&spec, &cls, &lim).unwrap();
                if con.g.order() != spec.group_order() {
                    bad.push(format!(
                        "{spec} {cls}: BSGS order {} != {}",
                        con.g.order(),
                        spec.group_order()
                    ));
                }
                if con.n.order() != td.normaliser_order {
                    bad.push(format!(
                        "{spec} {cls}: |N| by BSGS {} != {}",
                        con.n.order(),
                        td.normaliser_order
                    ));
                }
            }
        }
        d.push(format!("{classes} torus classes in {} corpus groups", corpus().len()));
        let ok = bad.is_empty();
        d.extend(bad);
        ok
    })
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut outcomes = vec![criterion1()];
    let (c2, table1) = criterion2(&cfg);
    outcomes.push(c2);
    outcomes.push(criterion3(&cfg));
    let (c4, known4) = criterion4(&cfg);
    outcomes.push(c4);
    outcomes.push(criterion5(&cfg));
    outcomes.push(criterion6(&cfg, &table1));
    outcomes.push(criterion7());
    outcomes.push(criterion8());

    for o in &outcomes {
        println!("\n[{}] {}", o.id, o.title);
        for line in &o.detail {
            println!("    {line}");
        }
    }
    println!("\nacceptance summary");
    for o in &outcomes {
        println!(
            "criterion {}: {}  {} ({:.1} s)",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.elapsed.as_secs_f64()
        );
    }
    let unexpected: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.pass && !(o.id == 4 && known4))
        .map(|o| o.id)
        .collect();
    if unexpected.is_empty() {
        if !outcomes[3].pass {
            println!("criterion 4 fails only through the U3(3) counterexample analysed above");
        }
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
