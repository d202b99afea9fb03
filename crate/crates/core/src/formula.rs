//! Closed-form principal congruence indices.
//!
//! For a level `2^a 3^b π` with `gcd(N(π), 6) = 1`,
//!
//! ```text
//! [H₅ : H(2^a 3^b π)] = I_a · J_b · N(π)³ · ∏_{P | π} (1 − N(P)⁻²)
//! I_0 = 1, I_1 = 10, I_a = 5·2^(6(a−1)) for a ≥ 2
//! J_0 = 1,           J_b = 120·3^(6(b−1)) for b ≥ 1
//! ```
//!
//! Nothing here enumerates; everything is integer arithmetic.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{factor_ideal, IdealHNF, PrimeFactor};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn pow(base: u64, e: u32) -> BigUint {
    big(base).pow(e)
}

fn as_string<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn factors_as_strings<S: Serializer>(
    v: &[(PrimeFactor, BigUint)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Entry<'a> {
        factor: &'a PrimeFactor,
        partial_index: String,
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (f, i) in v {
        seq.serialize_element(&Entry {
            factor: f,
            partial_index: i.to_string(),
        })?;
    }
    seq.end()
}

/// I_a: the contribution of (2)^a.
pub fn two_part(a: u32) -> BigUint {
    match a {
        0 => BigUint::one(),
        1 => big(10),
        _ => big(5) * pow(2, 6 * (a - 1)),
    }
}

/// J_b: the contribution of (3)^b.
pub fn three_part(b: u32) -> BigUint {
    match b {
        0 => BigUint::one(),
        _ => big(120) * pow(3, 6 * (b - 1)),
    }
}

/// `N³ ∏ (1 − N(P)⁻²)` over the given factors, in exact rationals.
fn sl2_style_product(factors: &[&PrimeFactor]) -> Result<BigUint> {
    let mut acc = BigRational::one();
    for f in factors {
        let np = BigRational::from_integer(f.prime.norm().into());
        let inv_sq = (&np * &np).recip();
        acc = acc * np.pow(3 * f.exponent as i32) * (BigRational::one() - inv_sq);
    }
    if !acc.is_integer() {
        return Err(Error::Unsupported(format!(
            "non-integral index product {acc}"
        )));
    }
    Ok(acc
        .to_integer()
        .to_biguint()
        .expect("index product is positive"))
}

fn check_level(level: &IdealHNF) -> Result<Vec<PrimeFactor>> {
    if level.is_unit() {
        return Err(Error::UnitIdeal);
    }
    factor_ideal(level)
}

/// |SL(2, Z[λ]/A)| = N(A)³ ∏_{P | A} (1 − N(P)⁻²).
pub fn sl2_order(level: &IdealHNF) -> Result<BigUint> {
    let factors = check_level(level)?;
    sl2_style_product(&factors.iter().collect::<Vec<_>>())
}

/// Breakdown of the closed-form index of one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub level: IdealHNF,
    #[serde(serialize_with = "factors_as_strings")]
    pub factors: Vec<(PrimeFactor, BigUint)>,
    /// Exponent of (2) in the level.
    pub a: u32,
    /// Exponent of (3) in the level.
    pub b: u32,
    #[serde(serialize_with = "as_string")]
    pub i_a: BigUint,
    #[serde(serialize_with = "as_string")]
    pub j_b: BigUint,
    #[serde(serialize_with = "as_string")]
    pub coprime_part_norm: BigUint,
    #[serde(serialize_with = "as_string")]
    pub total: BigUint,
}

/// [H₅ : H(A)] from the factorization of A.
pub fn index_formula(level: &IdealHNF) -> Result<IndexReport> {
    let factors = check_level(level)?;
    let exp_of = |p: u64| {
        factors
            .iter()
            .find(|f| f.rational_prime == p)
            .map_or(0, |f| f.exponent)
    };
    let (a, b) = (exp_of(2), exp_of(3));
    let i_a = two_part(a);
    let j_b = three_part(b);

    let coprime: Vec<&PrimeFactor> = factors
        .iter()
        .filter(|f| f.rational_prime != 2 && f.rational_prime != 3)
        .collect();
    let coprime_part_norm = coprime.iter().fold(BigUint::one(), |acc, f| {
        acc * pow(f.prime.norm() as u64, f.exponent)
    });
    let coprime_index = sl2_style_product(&coprime)?;
    let total = &i_a * &j_b * &coprime_index;

    let mut partials = Vec::with_capacity(factors.len());
    for f in &factors {
        let partial = match f.rational_prime {
            2 => i_a.clone(),
            3 => j_b.clone(),
            _ => sl2_style_product(&[f])?,
        };
        partials.push((f.clone(), partial));
    }
    debug_assert_eq!(
        partials.iter().fold(BigUint::one(), |acc, (_, p)| acc * p),
        total
    );
    Ok(IndexReport {
        level: *level,
        factors: partials,
        a,
        b,
        i_a,
        j_b,
        coprime_part_norm,
        total,
    })
}

/// Index of a level all of whose prime factors lie over one rational
/// prime, using the case-by-case tower formulas rather than the uniform
/// product.
pub fn index_prime_power(factors: &[PrimeFactor]) -> Result<BigUint> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Unsupported("empty factor list".into()))?;
    let p = first.rational_prime;
    if factors.iter().any(|f| f.rational_prime != p) {
        return Err(Error::Unsupported(
            "factors over different rational primes; factor the level first".into(),
        ));
    }
    let exponent_sum: u32 = factors.iter().map(|f| f.exponent).sum();
    if exponent_sum == 0 {
        return Ok(BigUint::one());
    }
    let e = first.exponent;
    Ok(match p {
        // powers of (2+λ): 120·5^(3(m−1))
        5 => big(120) * pow(5, 3 * (e - 1)),
        2 => two_part(e),
        3 => three_part(e),
        // inert: p^(6(n−1))·|SL(2, p²)|
        _ if first.is_inert() => {
            let sl2_p2 = pow(p, 2) * (pow(p, 4) - 1u32);
            pow(p, 6 * (e - 1)) * sl2_p2
        }
        // split: each prime above p contributes (p−1)p(p+1)·p^(3(s−1))
        _ => {
            let level_one = big((p - 1) * p * (p + 1));
            factors
                .iter()
                .filter(|f| f.exponent > 0)
                .fold(BigUint::one(), |acc, f| {
                    acc * &level_one * pow(p, 3 * (f.exponent - 1))
                })
        }
    })
}

/// A proven tower step `[H(πⁿ) : H(πⁿ⁺¹)]` and the generic bound `N(π)³`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStep {
    #[serde(serialize_with = "as_string")]
    pub step: BigUint,
    #[serde(serialize_with = "as_string")]
    pub bound: BigUint,
}

pub fn index_bound_step(pi: &IdealHNF, n: u32) -> Result<TowerStep> {
    let unsupported = || {
        Error::Unsupported(format!(
            "tower step for {pi}, n = {n}: supported cases are prime ideals with n >= 1"
        ))
    };
    if n == 0 || pi.is_unit() {
        return Err(unsupported());
    }
    let f = match factor_ideal(pi)?.as_slice() {
        [f] if f.exponent == 1 => f.clone(),
        _ => return Err(unsupported()),
    };
    let p = f.rational_prime;
    let norm = f.prime.norm() as u64;
    let step = match p {
        5 => pow(5, 3),
        2 if n == 1 => pow(2, 5),
        _ if f.is_inert() => pow(p, 6),
        _ => pow(p, 3),
    };
    let bound = pow(norm, 3);
    debug_assert!(step <= bound);
    Ok(TowerStep { step, bound })
}

/// Convenience accessor for reports whose total fits in 64 bits.
pub fn total_u64(report: &IndexReport) -> Option<u64> {
    report.total.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::split_rational_prime;
    use crate::ring::RingElt;

    fn level(a: i64, b: i64) -> IdealHNF {
        IdealHNF::from_generator(&RingElt::new(a, b)).unwrap()
    }

    fn total(a: i64, b: i64) -> u64 {
        total_u64(&index_formula(&level(a, b)).unwrap()).unwrap()
    }

    #[test]
    fn prime_levels() {
        assert_eq!(total(2, 0), 10);
        assert_eq!(total(3, 0), 120);
        assert_eq!(total(2, 1), 120);
        assert_eq!(total(7, 0), 117_600);
        assert_eq!(total(11, 0), 1_742_400);
    }

    #[test]
    fn ramified_cube() {
        let tau3 = level(2, 1).pow(3);
        assert_eq!(total_u64(&index_formula(&tau3).unwrap()), Some(1_875_000));
    }

    #[test]
    fn report_fields() {
        let r = index_formula(&level(2 * 2 * 3 * 7, 0)).unwrap();
        assert_eq!((r.a, r.b), (2, 1));
        assert_eq!(r.i_a, big(320));
        assert_eq!(r.j_b, big(120));
        assert_eq!(r.coprime_part_norm, big(49));
        assert_eq!(r.total, big(320 * 120 * 117_600));
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(sl2_order(&level(2, 0)).unwrap(), big(60));
        assert_eq!(sl2_order(&level(2, 1)).unwrap(), big(120));
        assert_eq!(sl2_order(&level(3, 0)).unwrap(), big(720));
        assert_eq!(sl2_order(&IdealHNF::unit()), Err(Error::UnitIdeal));
    }

    #[test]
    fn prime_power_cases() {
        let with_exp = |p: u64, e: u32| {
            let mut f = split_rational_prime(p).unwrap();
            f.iter_mut().for_each(|x| x.exponent = e);
            f
        };
        assert_eq!(index_prime_power(&with_exp(2, 3)).unwrap(), big(20480));
        assert_eq!(index_prime_power(&with_exp(3, 2)).unwrap(), big(87480));
        let mut tau11 = with_exp(11, 1);
        tau11[1].exponent = 0;
        assert_eq!(index_prime_power(&tau11).unwrap(), big(1320));
        assert_eq!(index_prime_power(&with_exp(11, 1)).unwrap(), big(1_742_400));
        assert_eq!(index_prime_power(&with_exp(7, 1)).unwrap(), big(117_600));

        let mut mixed = with_exp(2, 1);
        mixed.extend(with_exp(3, 1));
        assert!(index_prime_power(&mixed).is_err());
        assert!(index_prime_power(&[]).is_err());
    }

    #[test]
    fn tower_steps() {
        assert_eq!(index_bound_step(&level(2, 1), 2).unwrap().step, big(125));
        assert_eq!(index_bound_step(&level(2, 0), 1).unwrap().step, big(32));
        assert_eq!(index_bound_step(&level(2, 0), 2).unwrap().step, big(64));
        assert_eq!(index_bound_step(&level(3, 0), 1).unwrap().step, big(729));
        assert!(index_bound_step(&level(4, 0), 1).is_err());
        assert!(index_bound_step(&level(3, 0), 0).is_err());
        assert!(index_bound_step(&level(6, 0), 1).is_err());
    }
}
