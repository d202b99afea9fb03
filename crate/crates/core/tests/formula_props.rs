use hecke5::formula::{index_bound_step, index_formula, index_prime_power, sl2_order};
use hecke5::ideal::{factor_ideal, IdealHNF};
use hecke5::ring::RingElt;
use num_bigint::BigUint;
use proptest::prelude::*;

fn level_strategy() -> impl Strategy<Value = IdealHNF> {
    (-40i64..=40, -40i64..=40)
        .prop_filter("non-unit", |&(a, b)| {
            let n = (a * a + a * b - b * b).abs();
            n > 1
        })
        .prop_map(|(a, b)| IdealHNF::from_generator(&RingElt::new(a, b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn multiplicative_over_coprime_levels(x in level_strategy(), y in level_strategy()) {
        prop_assume!(num_integer::gcd(x.min_integer(), y.min_integer()) == 1);
        let xy = x.mul(&y);
        let lhs = index_formula(&xy).unwrap().total;
        let rhs = index_formula(&x).unwrap().total * index_formula(&y).unwrap().total;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coprime_to_six_is_sl2(x in level_strategy()) {
        let r = index_formula(&x).unwrap();
        let full = sl2_order(&x).unwrap();
        if num_integer::gcd(x.norm(), 6) == 1 {
            prop_assert_eq!(&r.total, &full);
        } else {
            prop_assert!(r.total < full);
        }
        prop_assert_eq!(&full % &r.total, BigUint::from(0u8));
    }

    #[test]
    fn per_prime_cases_agree_with_uniform_product(x in level_strategy()) {
        let factors = factor_ideal(&x).unwrap();
        let mut by_prime = std::collections::BTreeMap::<u64, Vec<_>>::new();
        for f in factors {
            by_prime.entry(f.rational_prime).or_default().push(f);
        }
        let total = by_prime
            .values()
            .map(|fs| index_prime_power(fs).unwrap())
            .fold(BigUint::from(1u8), |a, b| a * b);
        prop_assert_eq!(total, index_formula(&x).unwrap().total);
    }
}

#[test]
fn towers_are_consistent() {
    let primes = [
        RingElt::new(2, 1),
        RingElt::from_int(2),
        RingElt::from_int(3),
        RingElt::from_int(7),
        factor_ideal(&IdealHNF::from_int(11).unwrap()).unwrap()[0]
            .generator
            .clone(),
        factor_ideal(&IdealHNF::from_int(19).unwrap()).unwrap()[1]
            .generator
            .clone(),
    ];
    for g in primes {
        let pi = IdealHNF::from_generator(&g).unwrap();
        for n in 1..5 {
            let lo = index_formula(&pi.pow(n)).unwrap().total;
            let hi = index_formula(&pi.pow(n + 1)).unwrap().total;
            let step = index_bound_step(&pi, n).unwrap();
            assert_eq!(&hi % &lo, BigUint::from(0u8));
            assert_eq!(hi / lo, step.step, "{pi}^{n}");
            assert!(step.step <= step.bound);
        }
    }
}

#[test]
fn documented_values() {
    let l = |a: i64, b: i64| IdealHNF::from_generator(&RingElt::new(a, b)).unwrap();
    let total = |x: &IdealHNF| index_formula(x).unwrap().total;
    assert_eq!(total(&l(2, 0)), BigUint::from(10u32));
    assert_eq!(total(&l(7, 0)), BigUint::from(117_600u32));
    assert_eq!(total(&l(11, 0)), BigUint::from(1_742_400u32));
    assert_eq!(total(&l(2, 1).pow(3)), BigUint::from(1_875_000u32));
    assert_eq!(total(&l(6, 0)), BigUint::from(1200u32));
    assert!(index_formula(&IdealHNF::unit()).is_err());
}
