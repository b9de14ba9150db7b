//! Randomized invariants, exercised through proptest.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use setfam::arith::binomial;
use setfam::bollobas::{exact_separation_probability, PairSystem};
use setfam::compression::{is_up_set, up_closure};
use setfam::doc::{FamilyDocument, PairSystemDocument};
use setfam::predicates::{is_t_intersecting, satisfies_condition_one};
use setfam::set::{ElementSet, GroundParams};
use setfam::SetFamily;

fn arb_set(n: u32) -> impl Strategy<Value = ElementSet> {
    let max = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    (0..=max).prop_map(move |bits| ElementSet::from_bits(n, bits).unwrap())
}

/// Random family with rank bound `k` over `[n]`, at most eight members.
fn arb_family(n: u32, k: u32) -> impl Strategy<Value = SetFamily> {
    let params = GroundParams::new(n, k, 0).unwrap();
    proptest::collection::vec(arb_set(n), 0..=8).prop_map(move |sets| {
        let mut members: Vec<ElementSet> = Vec::new();
        for s in sets {
            let truncated: Vec<u32> = s.elements().take(k as usize).collect();
            let s = ElementSet::from_elements(n, &truncated).unwrap();
            if !members.contains(&s) {
                members.push(s);
            }
        }
        SetFamily::new(params, members).unwrap()
    })
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..1000)
        .prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #[test]
    fn union_intersection_cardinalities(n in 6u32..=64, a in 0u64.., b in 0u64..) {
        let mask = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let a = ElementSet::from_bits(n, a & mask).unwrap();
        let b = ElementSet::from_bits(n, b & mask).unwrap();
        prop_assert_eq!(
            a.union(&b).len() + a.intersection(&b).len(),
            a.len() + b.len()
        );
        prop_assert_eq!(
            a.symmetric_difference(&b).len(),
            a.difference(&b).len() + b.difference(&a).len()
        );
    }

    #[test]
    fn rational_arithmetic_is_exact(x in arb_rational(), y in arb_rational(), z in arb_rational()) {
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
    }

    #[test]
    fn pascal_rule(n in 1u64..200, r in 0i64..200) {
        prop_assert_eq!(
            binomial(n, r),
            binomial(n - 1, r - 1) + binomial(n - 1, r)
        );
    }

    #[test]
    fn closure_is_an_idempotent_up_set(n in 5u32..=6, f in (5u32..=6).prop_flat_map(|n| arb_family(n, 3))) {
        let _ = n;
        let closed = up_closure(&f);
        prop_assert_eq!(closed.len(), f.len());
        prop_assert!(is_up_set(&closed));
        prop_assert_eq!(&up_closure(&closed), &closed);
    }

    #[test]
    fn closure_of_condition_one_family_is_t_intersecting(
        f in arb_family(6, 3),
        t in 0u32..=3,
    ) {
        prop_assume!(satisfies_condition_one(&[&f, &f], 3, t));
        prop_assert!(is_t_intersecting(&up_closure(&f), t));
    }

    #[test]
    fn family_document_round_trip(f in arb_family(7, 4)) {
        let doc = FamilyDocument::from_family(&f, None);
        let json = serde_json::to_string(&doc).unwrap();
        let back = FamilyDocument::parse(&json).unwrap().to_family().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn pair_system_document_round_trip(
        pairs in proptest::collection::vec((0u64..16, 0u64..16), 1..=4),
        t in 0u32..=2,
    ) {
        let pairs: Vec<(ElementSet, ElementSet)> = pairs
            .into_iter()
            .map(|(a, b)| {
                (
                    ElementSet::from_bits(4, a).unwrap(),
                    ElementSet::from_bits(4, b).unwrap(),
                )
            })
            .collect();
        let sys = PairSystem::new(4, t, pairs).unwrap();
        let doc = PairSystemDocument::from_system(&sys);
        let json = serde_json::to_string(&doc).unwrap();
        let back = PairSystemDocument::parse(&json).unwrap().to_system().unwrap();
        prop_assert_eq!(back.pairs(), sys.pairs());
    }

    #[test]
    fn separation_probability_is_a_probability(a in arb_set(8), b in arb_set(8)) {
        let p = exact_separation_probability(&a, &b);
        prop_assert!(p > BigRational::from_integer(0.into()));
        prop_assert!(p <= BigRational::one());
    }
}
