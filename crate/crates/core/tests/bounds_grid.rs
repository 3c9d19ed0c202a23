use lietori::arith::prime_power;
use lietori::bounds::*;
use lietori::taxonomy::enumerate_torus_classes;
use lietori::{Family, GroupSpec, TorusClass};
use num_bigint::BigUint;
use num_rational::BigRational;
use permcore::Limits;
use proptest::prelude::*;

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

fn hi(r: &BoundReport) -> BigRational {
    r.value.hi.clone()
}

#[test]
fn classical_ledgers_over_q() {
    let lim = Limits::default();
    for fam in ["L", "U"] {
        for n in [3u32, 4, 5] {
            let mut last: Vec<Option<BigRational>> = Vec::new();
            for q in prime_powers(7, 49) {
                let spec: GroupSpec = format!("{fam}{n}({q})").parse().unwrap();
                let tori: Vec<TorusClass> = if n == 3 {
                    vec!["2,1".parse().unwrap()]
                } else {
                    enumerate_torus_classes(&spec)
                        .unwrap()
                        .into_iter()
                        .filter(|t| t.lambda.parts().iter().any(|&x| x > 1))
                        .collect()
                };
                last.resize(tori.len(), None);
                for (i, cls) in tori.iter().enumerate() {
                    let r = ledger_report(&spec, cls).unwrap().unwrap();
                    assert!(r.certified(), "{spec} {cls}: {}", r.value);
                    // the best strategy is never worse than the ledger
                    if q <= 9 {
                        assert!(hi(&qhat_upper(&spec, cls, &lim).unwrap()) <= hi(&r));
                    }
                    // the closed ledgers decrease with q
                    if let Some(prev) = &last[i] {
                        assert!(hi(&r) <= *prev, "{spec} {cls}");
                    }
                    last[i] = Some(hi(&r));
                }
            }
        }
    }
}

#[test]
fn exceptional_ledgers_decrease_with_q() {
    for (fam, lo, top) in [
        (Family::E8, 2, 64),
        (Family::E7, 3, 64),
        (Family::E6, 4, 64),
        (Family::F4, 7, 64),
        (Family::G2, 16, 128),
    ] {
        let mut prev: Option<BigRational> = None;
        for q in prime_powers(lo, top) {
            let r = exceptional_qhat(fam, q).unwrap();
            assert_eq!(r.len(), 1);
            assert!(r[0].certified(), "{fam:?} {q}");
            if let Some(p) = &prev {
                assert!(hi(&r[0]) <= *p, "{fam:?} {q}");
            }
            prev = Some(hi(&r[0]));
        }
    }
}

#[test]
fn suzuki_ree_ledgers() {
    for q in [8u64, 32, 128, 512] {
        assert!(exceptional_qhat(Family::F4tw, q).unwrap().iter().all(|r| r.certified()));
    }
    for q in [27u64, 243, 2187] {
        assert!(exceptional_qhat(Family::G2tw, q).unwrap().iter().all(|r| r.certified()));
    }
    assert!(exceptional_qhat(Family::F4tw, 2).is_err());
}

#[test]
fn reports_serialize() {
    let spec: GroupSpec = "L3(7)".parse().unwrap();
    let r = qhat_upper(&spec, &"2,1".parse().unwrap(), &Limits::default()).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["verdict"], "certified_b2");
    assert_eq!(j["ledger"].as_array().unwrap().len(), r.ledger.len());
}

proptest! {
    #[test]
    fn sound_ir_sum_dominates_published(n in 2u32..9, q in 2u64..30, r in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let a = ir_bound_linear(n, q, r);
        let b = ir_bound_linear_sound(n, q, r);
        prop_assert!(b >= a);
        prop_assert_eq!(a == b, n % r != 0);
    }

    #[test]
    fn coset_bounds_increase_with_q(n in 2u32..8, h in 0u32..4, q in 2u64..40) {
        let lu2 = CosetFormula::Lu2 { n, h };
        let acc = CosetFormula::Acc { n, r: 3, h };
        for f in [lu2, acc] {
            if let (Ok(a), Ok(b)) = (involution_coset_bounds(&f, q), involution_coset_bounds(&f, q + 1)) {
                prop_assert!(a <= b);
            }
        }
    }

    #[test]
    fn root_bound_is_linear(t in 1u64..100_000, rho in 0u64..200) {
        prop_assert_eq!(root_element_bound(&BigUint::from(t), rho), BigUint::from(t * rho));
    }
}
