//! Six matrices `I + pⁿU` modulo `pⁿ⁺¹` generate an elementary abelian
//! group of order p⁶.

use crate::hecke::Mat2;
use crate::ideal::{is_prime, IdealHNF};
use crate::quotient::{MatrixGroup, ResMat, DEFAULT_CAP};
use crate::residue::ResidueRing;
use crate::ring::RingElt;

use super::{Check, Provenance, VerificationReport};

/// `[X₀, X₁, Y₀, Y₁, Z₀, Z₁]` over Z[λ], before reduction.
pub fn lemma_a_generators(p: u64, n: u32) -> [Mat2; 6] {
    let pn = RingElt::from_int(num_bigint::BigInt::from(p).pow(n));
    let l = |k: i64| &pn * &RingElt::lambda_pow(k);
    let one = RingElt::one;
    let zero = RingElt::zero;
    let x = |i| Mat2::new(one(), l(i), zero(), one());
    let y = |i| Mat2::new(one(), zero(), -l(i), one());
    let z = |i| Mat2::new(one() - l(i + 1), l(i + 2), -l(i), one() + l(i + 1));
    [x(0), x(1), y(0), y(1), z(0), z(1)]
}

pub fn verify_lemma_a(p: u64, n: u32) -> VerificationReport {
    let name = format!("lemma_a(p={p},n={n})");
    if !is_prime(p) || n == 0 {
        return VerificationReport::new(
            name,
            vec![Check::error(
                "input",
                format!("need a prime p and n >= 1, got p={p}, n={n}"),
            )],
        );
    }
    let modulus = match n
        .checked_add(1)
        .and_then(|e| (p as i64).checked_pow(e))
        .map(IdealHNF::from_int)
    {
        Some(Ok(m)) => m,
        _ => {
            return VerificationReport::new(name, vec![Check::error("input", "modulus too large")])
        }
    };
    let ring = ResidueRing::new(modulus);
    let gens: Vec<ResMat> = lemma_a_generators(p, n)
        .iter()
        .map(|g| ring.mat_reduce(g))
        .collect();
    let mut checks = Vec::new();

    let one = ring.one();
    let bad_det = gens.iter().find(|g| ring.mat_det(g) != one);
    checks.push(Check::holds(
        "determinants",
        bad_det.is_none(),
        Provenance::Derived,
        || format!("det {} ≠ 1", ring.mat_display(bad_det.unwrap())),
    ));

    // (I + pⁿU)(I + pⁿV) ≡ I + pⁿ(U + V), i.e. gh ≡ g + h − I
    let id = ring.mat_identity();
    let add = |l: &ResMat, r: &ResMat| {
        let mut out = *l;
        for i in 0..4 {
            out.0[i] = ring.sub(ring.add(l.0[i], r.0[i]), id.0[i]);
        }
        out
    };
    let mut additive_failure = None;
    'outer: for g in &gens {
        for h in &gens {
            if ring.mat_mul(g, h) != add(g, h) {
                additive_failure = Some((*g, *h));
                break 'outer;
            }
        }
    }
    checks.push(Check::holds(
        "products_add",
        additive_failure.is_none(),
        Provenance::Stated,
        || {
            let (g, h) = additive_failure.unwrap();
            format!("{} · {}", ring.mat_display(&g), ring.mat_display(&h))
        },
    ));

    let generate = |gs: &[ResMat]| MatrixGroup::generate(ring, gs, DEFAULT_CAP);
    let (whole, m, nn) = match (generate(&gens), generate(&gens[..4]), generate(&gens[4..])) {
        (Ok(w), Ok(m), Ok(nn)) => (w, m, nn),
        (w, m, nn) => {
            let err = [w.err(), m.err(), nn.err()].into_iter().flatten().next();
            checks.push(Check::error("closure", err.expect("one closure failed")));
            return VerificationReport::new(name, checks);
        }
    };
    let p_pow = |e: u32| p.pow(e);

    checks.push(Check::equal(
        "order",
        whole.order(),
        p_pow(6),
        Provenance::Stated,
    ));
    let nc = whole.non_commuting(&gens);
    checks.push(Check::holds(
        "abelian",
        nc.is_none(),
        Provenance::Stated,
        || {
            let (g, x) = nc.unwrap();
            format!(
                "{} and {} do not commute",
                ring.mat_display(&g),
                ring.mat_display(&x)
            )
        },
    ));
    let ew = whole.exponent_witness(p);
    checks.push(Check::holds(
        "exponent_p",
        ew.is_none(),
        Provenance::Stated,
        || format!("{}^{p} ≠ I", ring.mat_display(&ew.unwrap())),
    ));
    checks.push(Check::equal(
        "order_m",
        m.order(),
        p_pow(4),
        Provenance::Stated,
    ));
    checks.push(Check::equal(
        "order_n",
        nn.order(),
        p_pow(2),
        Provenance::Stated,
    ));
    checks.push(Check::equal(
        "m_cap_n",
        m.intersection_order(&nn),
        1,
        Provenance::Stated,
    ));
    VerificationReport::new(name, checks)
}
