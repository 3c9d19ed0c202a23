//! Oracle checks shared by the soundness tests and the acceptance run. Each
//! returns the list of violations instead of panicking, so the acceptance
//! run can report them.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lietori::arith::{big, binom};
use lietori::bounds::{
    exact_meets, ir_bound_linear, ir_bound_linear_sound, ir_bound_symplectic, linear_class_meet_bound,
    root_element_bound,
};
use lietori::classcat::{
    brute_force_classes, class_size_lower_bound, formula_classes, linear_shape, ClassLabel, ClassRecord,
};
use lietori::matgrp::construct;
use lietori::taxonomy::{enumerate_torus_classes, torus_data};
use lietori::{GroupSpec, TorusClass};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use permcore::{exhaustive_classes, Limits};

fn sizes(v: &[ClassRecord]) -> Vec<(u64, BigUint)> {
    let mut s: Vec<_> = v.iter().map(|c| (c.order, c.size.clone())).collect();
    s.sort();
    s
}

/// Formula-mode prime-order classes against exhaustive enumeration; returns
/// the number of classes on agreement.
pub fn class_lists_agree(name: &str) -> Result<usize, String> {
    let spec: GroupSpec = name.parse().unwrap();
    let f = formula_classes(&spec).map_err(|e| format!("{name}: {e}"))?;
    let b = brute_force_classes(&spec, &Limits::default()).map_err(|e| format!("{name}: {e}"))?;
    if sizes(&f) == sizes(&b) {
        Ok(f.len())
    } else {
        Err(format!(
            "{name}: formula {:?} != enumeration {:?}",
            sizes(&f),
            sizes(&b)
        ))
    }
}

/// A-side: i_r, the involution-coset bounds (through the per-class meet
/// bound) and the root element bound against the exact meets in every
/// constructed normaliser of a linear or unitary group.
pub fn linear_a_side_violations(name: &str, only: Option<&str>) -> Vec<String> {
    let spec: GroupSpec = name.parse().unwrap();
    let lim = Limits::default();
    let mut bad = Vec::new();
    let classes = formula_classes(&spec).unwrap();
    let mut bound_of: BTreeMap<(u64, BigUint), Option<BigUint>> = BTreeMap::new();
    for c in &classes {
        let b = linear_class_meet_bound(&spec, c).map(|x| x.0);
        let e = bound_of
            .entry((c.order, c.size.clone()))
            .or_insert(Some(BigUint::zero()));
        *e = match (e.take(), b) {
            (Some(s), Some(b)) => Some(s + b),
            _ => None,
        };
    }
    let tv_size = classes
        .iter()
        .find(|c| {
            spec.p == 2
                && matches!(&c.label, ClassLabel::UnipotentJordan { partition, .. }
                    if partition.parts().iter().filter(|&&x| x == 2).count() == 1)
        })
        .map(|c| c.size.clone());
    for cls in enumerate_torus_classes(&spec).unwrap() {
        if only.is_some_and(|o| o.parse::<TorusClass>().unwrap() != cls) {
            continue;
        }
        let td = torus_data(&spec, &cls).unwrap();
        let con = construct(&spec, &cls, &lim).unwrap();
        let meets = exact_meets(&con, &lim).unwrap();
        let mut per_prime: BTreeMap<u64, u64> = BTreeMap::new();
        let mut per_bucket: BTreeMap<(u64, BigUint), u64> = BTreeMap::new();
        for m in &meets {
            *per_prime.entry(m.order).or_default() += m.meet;
            *per_bucket.entry((m.order, big(m.class_size))).or_default() += m.meet;
        }
        for (&r, &count) in &per_prime {
            let b = ir_bound_linear_sound(spec.n, spec.q(), r as u32);
            if big(count) > b {
                bad.push(format!("{name} {cls}: i_{r}(N) = {count} > {b}"));
            }
            if (r as u32 > spec.n || spec.n % r as u32 != 0) && b != ir_bound_linear(spec.n, spec.q(), r as u32) {
                bad.push(format!(
                    "{name}: corrected i_{r} sum differs although {r} does not divide n"
                ));
            }
            if !(&td.f_centralizer_order % r).is_zero() && big(count) >= td.torus_order {
                bad.push(format!("{name} {cls}: order {r} outside T"));
            }
        }
        for (key, &count) in &per_bucket {
            match bound_of.get(key) {
                None => bad.push(format!("{name}: no formula class {key:?}")),
                Some(Some(b)) if &big(count) > b => {
                    bad.push(format!("{name} {cls}: bucket {key:?} meets {count} > {b}"))
                }
                _ => {}
            }
        }
        // transvections are root elements; reflections in R = C(w) are the
        // transpositions swapping two fixed points or forming a 2-cycle of w
        if let Some(s) = &tv_size {
            let invols = classes.iter().filter(|c| c.order == 2 && &c.size == s).count();
            if invols == 1 {
                let mult = cls.lambda.multiplicities();
                let a1 = *mult.get(&1).unwrap_or(&0) as u64;
                let a2 = *mult.get(&2).unwrap_or(&0) as u64;
                let rho = binom(a1, 2).to_string().parse::<u64>().unwrap() + a2;
                let count = per_bucket.get(&(2, s.clone())).copied().unwrap_or(0);
                let b = root_element_bound(&td.torus_order, rho);
                if big(count) > b {
                    bad.push(format!("{name} {cls}: {count} transvections > ρ|T| = {b}"));
                }
            }
        }
    }
    bad
}

/// B-side: class size lower bounds never exceed the exact size.
pub fn b_side_violations(name: &str) -> Vec<String> {
    let spec: GroupSpec = name.parse().unwrap();
    let mut bad = Vec::new();
    for c in formula_classes(&spec).unwrap() {
        let Some(shape) = linear_shape(&spec, &c) else { continue };
        let lb = class_size_lower_bound(&spec, &shape).unwrap();
        if lb > BigRational::from_integer(c.size.clone().into()) {
            bad.push(format!("{name} {}: bound {lb} > {}", c.label, c.size));
        }
    }
    bad
}

/// Odd r: i_r(N) against the symplectic bound in every constructed normaliser.
pub fn symplectic_ir_violations(name: &str) -> Vec<String> {
    let spec: GroupSpec = name.parse().unwrap();
    let lim = Limits::default();
    let mut bad = Vec::new();
    for cls in enumerate_torus_classes(&spec).unwrap() {
        let con = construct(&spec, &cls, &lim).unwrap();
        let mut count: BTreeMap<u64, u64> = BTreeMap::new();
        for k in exhaustive_classes(&con.n, &lim, true).unwrap() {
            *count.entry(k.element_order.try_into().unwrap()).or_default() += k.size;
        }
        for (&r, &c) in &count {
            if r % 2 == 1 {
                let b = ir_bound_symplectic(spec.rank(), spec.q(), r as u32);
                if big(c) > b {
                    bad.push(format!("{name} {cls}: i_{r}(N) = {c} > {b}"));
                }
            }
        }
    }
    bad
}
