use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use knotshift::covers::{cover_homology, order_oracle, Order};
use knotshift::groups::{group_family, PermGroup, Permutation, DEFAULT_ORDER_BOUND};
use knotshift::homs::{enumerate_homs, GroupHom, SearchBudget};
use knotshift::presentation::{braid_components, Presentation};
use knotshift::twisted::{classical_alexander, twisted_alexander};

fn family(spec: &str) -> PermGroup {
    group_family(&spec.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap()
}

/// Braids on 3 strands whose closure is a knot.
fn knot_braid(positive: bool) -> impl Strategy<Value = Vec<i32>> {
    let letter = if positive { prop_oneof![Just(1), Just(2)].boxed() } else { prop_oneof![Just(1), Just(2), Just(-1), Just(-2)].boxed() };
    prop::collection::vec(letter, 2..9).prop_filter("closure must be a knot", |b| braid_components(b, 3) == 1)
}

fn knot_group(b: &[i32]) -> Presentation {
    Presentation::wirtinger_from_braid(b, 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alexander_polynomial_is_symmetric_with_unit_value(b in knot_braid(false)) {
        let d = classical_alexander::<BigInt>(&knot_group(&b)).unwrap();
        let p = d.representative();
        prop_assert_eq!(p.evaluate(&BigInt::from(1)).unwrap().abs(), BigInt::from(1));
        let top = p.max_exp().unwrap();
        for e in 0..=top {
            prop_assert_eq!(p.coeff(e).abs(), p.coeff(top - e).abs());
        }
    }

    #[test]
    fn cover_orders_match_the_resultant(b in knot_braid(false), r in 2usize..5) {
        let pres = knot_group(&b);
        let h1 = cover_homology(&pres, r).unwrap();
        match order_oracle(&pres, r).unwrap() {
            Order::Finite(n) => prop_assert_eq!(h1.order(), Some(n)),
            Order::Infinite => prop_assert!(h1.free_rank > 0),
        }
    }

    #[test]
    fn positive_braid_closures_satisfy_the_degree_law(b in knot_braid(true)) {
        // positive braid closures are fibered of genus (crossings - strands + 1) / 2
        let pres = knot_group(&b);
        let genus = (b.len() as i64 - 2) / 2;
        let classical = classical_alexander::<BigInt>(&pres).unwrap();
        prop_assert!(classical.representative().is_monic());
        prop_assert_eq!(classical.representative().span_degree(), Some(2 * genus));
        let s3 = family("symmetric:3");
        for gamma in enumerate_homs(&pres, &s3, SearchBudget::default()).unwrap() {
            for g in [gamma.clone(), gamma.regular(&s3)] {
                let n = g.degree() as i64;
                let o = g.commutator_orbit_count(&pres).unwrap() as i64;
                let d = twisted_alexander::<BigInt>(&pres, &g).unwrap();
                prop_assert!(d.representative().is_monic());
                prop_assert_eq!(d.representative().span_degree(), Some(2 * genus * n - n + o));
            }
        }
    }

    #[test]
    fn relabeling_points_preserves_delta(b in knot_braid(false), pick in any::<prop::sample::Index>(), sigma in any::<prop::sample::Index>()) {
        let pres = knot_group(&b);
        let s4 = family("symmetric:4");
        let homs = enumerate_homs(&pres, &s4, SearchBudget::default()).unwrap();
        let gamma = pick.get(&homs);
        let s = sigma.get(s4.elements());
        let moved: Vec<Permutation> = gamma.images().iter().map(|g| s.inverse().compose(g).compose(s)).collect();
        let other = GroupHom::new(&pres, moved).unwrap();
        prop_assert_eq!(
            twisted_alexander::<BigInt>(&pres, gamma).unwrap(),
            twisted_alexander::<BigInt>(&pres, &other).unwrap()
        );
        prop_assert_eq!(gamma.commutator_orbit_count(&pres).unwrap(), other.commutator_orbit_count(&pres).unwrap());
    }

    #[test]
    fn regular_orbits_are_commutator_cosets(b in knot_braid(false), pick in any::<prop::sample::Index>()) {
        let pres = knot_group(&b);
        let s4 = family("symmetric:4");
        let homs = enumerate_homs(&pres, &s4, SearchBudget::default()).unwrap();
        let gamma = pick.get(&homs);
        let image = gamma.image_group();
        let m = &gamma.images()[pres.meridian().unwrap()];
        let seeds: Vec<Permutation> = gamma.images().iter().map(|g| g.compose(&m.inverse())).collect();
        let commutator = image.normal_closure(&seeds);
        let regular = gamma.regular(&s4);
        let o = regular.commutator_orbit_count(&pres).unwrap();
        prop_assert_eq!(o * commutator.order(), s4.order());
    }
}
