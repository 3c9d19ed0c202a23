use lietori::arith::{big, pow};
use lietori::taxonomy::{enumerate_torus_classes, steinberg_sum, torus_data, weyl_class_sum};
use lietori::{Family, GroupSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn tori_count(spec: &GroupSpec) -> BigRational {
    let q = spec.q();
    BigRational::from_integer(BigInt::from(pow(q, 2 * spec.positive_root_count() as u32)))
}

#[test]
fn steinberg_gl() {
    for n in 2..=6 {
        for q in [2, 3, 4, 5] {
            let s = GroupSpec::new(Family::LinearA, n, q).unwrap();
            assert_eq!(steinberg_sum(&s).unwrap(), tori_count(&s), "{s}");
        }
    }
}

#[test]
fn steinberg_gl2_2_by_hand() {
    // split torus: |GL_2(2)| / (1 * 2) = 3; Singer torus: 6 / (3 * 2) = 1
    let s = GroupSpec::new(Family::LinearA, 2, 2).unwrap();
    assert_eq!(steinberg_sum(&s).unwrap(), BigRational::from_integer(4.into()));
}

#[test]
fn steinberg_other_families() {
    let mut specs = Vec::new();
    for q in [2, 3, 4, 5] {
        for n in 2..=6 {
            specs.push(GroupSpec::new(Family::UnitaryA2, n, q).unwrap());
        }
        for n in [4, 6, 8, 10] {
            specs.push(GroupSpec::new(Family::SymplecticC, n, q).unwrap());
            specs.push(GroupSpec::new(Family::OrthogonalPlusD, n, q).unwrap());
            specs.push(GroupSpec::new(Family::OrthogonalMinus2D, n, q).unwrap());
        }
        if q % 2 == 1 {
            for n in [3, 5, 7, 9] {
                specs.push(GroupSpec::new(Family::OrthogonalOddB, n, q).unwrap());
            }
        }
        specs.push(GroupSpec::new(Family::G2, 0, q).unwrap());
        specs.push(GroupSpec::new(Family::D4tri, 0, q).unwrap());
    }
    for s in specs {
        assert_eq!(steinberg_sum(&s).unwrap(), tori_count(&s), "{s}");
        assert_eq!(
            weyl_class_sum(&s).unwrap(),
            BigRational::from_integer(BigInt::from(s.weyl_order())),
            "{s}"
        );
    }
}

#[test]
fn l2_normalisers_are_dihedral() {
    for q in [4u64, 5, 7, 8, 9, 11, 16, 32] {
        let s = GroupSpec::new(Family::LinearA, 2, q).unwrap();
        let d = if q % 2 == 0 { 1 } else { 2 };
        let mut ns: Vec<_> = enumerate_torus_classes(&s)
            .unwrap()
            .iter()
            .map(|c| torus_data(&s, c).unwrap().normaliser_order)
            .collect();
        ns.sort();
        assert_eq!(ns, vec![big(2 * (q - 1) / d), big(2 * (q + 1) / d)]);
    }
}

fn any_spec() -> impl Strategy<Value = GroupSpec> {
    let qs = prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27]);
    (0usize..8, 2u32..9, qs).prop_filter_map("valid spec", |(k, n, q)| {
        let fam = [
            Family::LinearA,
            Family::UnitaryA2,
            Family::SymplecticC,
            Family::OrthogonalOddB,
            Family::OrthogonalPlusD,
            Family::OrthogonalMinus2D,
            Family::G2,
            Family::D4tri,
        ][k];
        GroupSpec::new(fam, n, q).ok()
    })
}

proptest! {
    #[test]
    fn normaliser_is_torus_times_r(spec in any_spec()) {
        for cls in enumerate_torus_classes(&spec).unwrap() {
            let td = torus_data(&spec, &cls).unwrap();
            prop_assert_eq!(&td.normaliser_order, &(&td.torus_order * &td.f_centralizer_order));
            let prod: num_bigint::BigUint = td.hat_torus_factors.iter().map(|f| &f.order).product();
            prop_assert_eq!(&prod % &td.torus_order, big(0));
            prop_assert_eq!(spec.group_order() % &td.normaliser_order, big(0));
        }
    }

    #[test]
    fn classes_are_distinct(spec in any_spec()) {
        let cl = enumerate_torus_classes(&spec).unwrap();
        let set: std::collections::BTreeSet<_> = cl.iter().collect();
        prop_assert_eq!(set.len(), cl.len());
        for c in &cl {
            let again: lietori::TorusClass = c.to_string().parse().unwrap();
            prop_assert_eq!(&again, c);
        }
    }
}
