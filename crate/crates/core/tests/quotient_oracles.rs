use std::collections::HashSet;

use hecke5::formula::{index_bound_step, index_formula, sl2_order};
use hecke5::hecke::Mat2;
use hecke5::ideal::{factor_ideal, IdealHNF};
use hecke5::quotient::{
    build_quotient, coset_words, index_h, is_surjective, power_subgroup, subgroup_from_predicate,
    CongruenceSubgroup, MatrixGroup, ResMat, DEFAULT_CAP,
};
use hecke5::residue::ResidueRing;
use hecke5::ring::RingElt;
use num_bigint::BigUint;

fn level(a: i64, b: i64) -> IdealHNF {
    IdealHNF::from_generator(&RingElt::new(a, b)).unwrap()
}

/// Counts determinant-one matrices over Z[λ]/A directly.
fn brute_sl2(ring: &ResidueRing) -> u64 {
    let elems: Vec<_> = ring.elements().collect();
    let one = ring.one();
    let mut n = 0;
    for &a in &elems {
        for &d in &elems {
            let ad = ring.mul(a, d);
            for &b in &elems {
                for &c in &elems {
                    if ring.sub(ad, ring.mul(b, c)) == one {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

#[test]
fn sl2_order_matches_brute_force() {
    for (a, b) in [(2, 0), (2, 1), (3, 0), (4, 0), (3, 1)] {
        let l = level(a, b);
        let want = brute_sl2(&ResidueRing::new(l));
        assert_eq!(sl2_order(&l).unwrap(), BigUint::from(want), "level {l}");
    }
}

#[test]
fn borel_index_counts_projective_line() {
    // |P¹(F_11)| = 12 for a prime above 11, and (11+1)² for (11) itself
    let primes = factor_ideal(&level(11, 0)).unwrap();
    let tau11 = primes[0].prime;
    let q = build_quotient(&tau11, DEFAULT_CAP).unwrap();
    assert_eq!(q.order(), 1320);
    let h0 = subgroup_from_predicate(&q, CongruenceSubgroup::H0);
    assert_eq!(h0.index_in(&q), 12);
    let h1 = subgroup_from_predicate(&q, CongruenceSubgroup::H1);
    assert_eq!(h1.index_in(&q), 1320 / 11);
}

#[test]
fn borel_index_at_eleven() {
    let q = build_quotient(&level(11, 0), DEFAULT_CAP).unwrap();
    let h0 = subgroup_from_predicate(&q, CongruenceSubgroup::H0);
    assert_eq!(h0.index_in(&q), 144);
}

/// Subgroup generated by k-th powers, by plain closure with no generator
/// pruning.
fn naive_power_closure(ring: ResidueRing, elems: &[ResMat], k: u64) -> usize {
    let powers: Vec<ResMat> = elems
        .iter()
        .map(|g| ring.mat_pow(g, k))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut seen: HashSet<ResMat> = HashSet::from([ring.mat_identity()]);
    let mut stack = vec![ring.mat_identity()];
    while let Some(x) = stack.pop() {
        for p in &powers {
            let y = ring.mat_mul(&x, p);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

#[test]
fn power_subgroup_matches_naive_closure() {
    for (l, k) in [
        (level(2, 0), 5),
        (level(2, 0), 2),
        (level(3, 0), 3),
        (level(5, 0), 5),
    ] {
        let q = build_quotient(&l, DEFAULT_CAP).unwrap();
        let elems: Vec<ResMat> = q.group().iter().collect();
        let want = naive_power_closure(*q.ring(), &elems, k);
        let got = power_subgroup(&q, k);
        assert_eq!(got.order(), want, "level {l}, k = {k}");
        assert_eq!(q.order() % got.order(), 0);
    }
}

#[test]
fn fifth_powers_mod_2_and_5() {
    let q2 = build_quotient(&level(2, 0), DEFAULT_CAP).unwrap();
    let p = power_subgroup(&q2, 5);
    assert_eq!(10 % p.index_in(&q2), 0);
    let q5 = build_quotient(&level(5, 0), DEFAULT_CAP).unwrap();
    assert_eq!(power_subgroup(&q5, 5).index_in(&q5), 1);
}

#[test]
fn coset_words_round_trip() {
    for l in [level(2, 0), level(3, 0), level(2, 1), level(4, 0)] {
        let q = build_quotient(&l, DEFAULT_CAP).unwrap();
        let words = coset_words(&q);
        assert_eq!(words.len(), q.order());
        let mut seen = HashSet::new();
        for (m, w) in &words {
            assert!(w.0.iter().all(|l| matches!(l.symbol(), 'S' | 'T')));
            let r = q.reduce(&w.eval());
            assert_eq!(&r, m);
            assert!(seen.insert(r));
        }
        assert!(q.verify_closure());
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = build_quotient(&level(3, 0), DEFAULT_CAP).unwrap();
    let b = build_quotient(&level(3, 0), DEFAULT_CAP).unwrap();
    let ka: Vec<_> = coset_words(&a)
        .into_iter()
        .map(|(_, w)| w.to_string())
        .collect();
    let kb: Vec<_> = coset_words(&b)
        .into_iter()
        .map(|(_, w)| w.to_string())
        .collect();
    assert_eq!(ka, kb);
}

#[test]
fn index_is_multiplicative_on_coprime_levels() {
    let small = [(2, 0), (3, 0), (4, 0), (2, 1), (7, 0)];
    let idx: Vec<u64> = small
        .iter()
        .map(|&(a, b)| index_h(&level(a, b)).unwrap())
        .collect();
    for i in 0..small.len() {
        for j in i + 1..small.len() {
            let (x, y) = (level(small[i].0, small[i].1), level(small[j].0, small[j].1));
            if num_integer::gcd(x.min_integer(), y.min_integer()) != 1 {
                continue;
            }
            let prod = x.mul(&y);
            if prod.norm() > 200 {
                continue;
            }
            assert_eq!(index_h(&prod).unwrap(), idx[i] * idx[j], "{x} * {y}");
        }
    }
}

#[test]
fn formula_equals_enumeration_and_divides_sl2() {
    for (a, b) in [
        (2, 0),
        (3, 0),
        (2, 1),
        (4, 0),
        (6, 0),
        (3, 1),
        (3, 2),
        (8, 0),
    ] {
        let l = level(a, b);
        let n = index_h(&l).unwrap();
        assert_eq!(
            index_formula(&l).unwrap().total,
            BigUint::from(n),
            "level {l}"
        );
        let full = sl2_order(&l).unwrap();
        assert_eq!(&full % BigUint::from(n), BigUint::from(0u8));
        let coprime = num_integer::gcd(l.norm(), 6) == 1;
        assert_eq!(is_surjective(&l).unwrap(), coprime, "level {l}");
    }
}

#[test]
fn tower_steps_match_enumeration() {
    for (pi, top) in [(level(2, 1), 3), (level(2, 0), 3), (level(3, 0), 2)] {
        for n in 1..top {
            let lo = index_h(&pi.pow(n)).unwrap();
            let hi = index_h(&pi.pow(n + 1)).unwrap();
            let step = index_bound_step(&pi, n).unwrap();
            assert_eq!(BigUint::from(hi / lo), step.step, "{pi}^{n}");
            assert!(step.step <= step.bound);
        }
    }
}

#[test]
fn omega2_mod_4_generates_sixteen() {
    let ring = ResidueRing::new(level(4, 0));
    let gens: Vec<ResMat> = [
        [(1, 0), (0, 2), (0, 0), (1, 0)],
        [(1, 0), (0, 0), (0, 2), (1, 0)],
        [(1, 2), (2, 2), (0, 2), (1, 2)],
        [(1, 2), (0, 2), (2, 2), (1, 2)],
    ]
    .iter()
    .map(|e| ring.mat_reduce(&Mat2::from_coords(*e)))
    .collect();
    let g = MatrixGroup::generate(ring, &gens, 1000).unwrap();
    assert_eq!(g.order(), 16);
    let with_minus = {
        let mut v = gens.clone();
        v.push(ring.mat_reduce(&Mat2::identity().neg()));
        MatrixGroup::generate(ring, &v, 1000).unwrap()
    };
    // [H(2) : H(4)] = 320 / 10
    assert_eq!(with_minus.order(), 32);
}
