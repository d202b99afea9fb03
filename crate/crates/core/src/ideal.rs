//! Ideals of Z[λ] as canonical Hermite-normal-form lattices in Z².
//!
//! An ideal is stored as the row basis `(d1, k), (0, d2)` with `0 ≤ k < d2`,
//! in coordinates (coefficient of 1, coefficient of λ). Equal ideals have
//! equal triples, so the triple doubles as a hash key.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{gcd_pseudo, RingElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdealHNF {
    pub d1: i64,
    pub k: i64,
    pub d2: i64,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Unsupported(format!("ideal coordinate {x} exceeds 64 bits")))
}

/// HNF of the lattice spanned by `rows`; `None` when the rank is below two.
fn hnf_of_rows(rows: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut d2 = BigInt::zero();
    for (x, y) in rows {
        match pivot.take() {
            None => {
                if x.is_zero() {
                    d2 = d2.gcd(y);
                } else {
                    pivot = Some((x.clone(), y.clone()));
                }
            }
            Some((px, py)) => {
                if x.is_zero() {
                    d2 = d2.gcd(y);
                    pivot = Some((px, py));
                    continue;
                }
                let eg = px.extended_gcd(x);
                let g = eg.gcd;
                let ny = &eg.x * &py + &eg.y * y;
                // kernel combination clears the first coordinate
                let ky = (x / &g) * &py - (&px / &g) * y;
                d2 = d2.gcd(&ky);
                pivot = Some((g, ny));
            }
        }
    }
    let (mut d1, mut k) = pivot?;
    if d2.is_zero() {
        return None;
    }
    if d1.is_negative() {
        d1 = -d1;
        k = -k;
    }
    k = k.mod_floor(&d2);
    Some((d1, k, d2))
}

impl IdealHNF {
    /// Validates a triple: positive diagonal, `0 ≤ k < d2`, and closure under λ.
    pub fn from_triple(d1: i64, k: i64, d2: i64) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidHnf { d1, k, d2, reason });
        if d1 <= 0 || d2 <= 0 {
            return bad("diagonal entries must be positive");
        }
        if k < 0 || k >= d2 {
            return bad("need 0 <= k < d2");
        }
        if d1.checked_mul(d2).is_none() {
            return bad("norm exceeds 64 bits");
        }
        let ideal = IdealHNF { d1, k, d2 };
        // λ(d1 + kλ) = k + (d1 + k)λ and λ(d2λ) = d2 + d2λ
        let lam_row1 = RingElt::new(k, d1 as i128 + k as i128);
        let lam_row2 = RingElt::new(d2, d2);
        if !ideal.contains(&lam_row1) || !ideal.contains(&lam_row2) {
            return bad("lattice is not closed under multiplication by L");
        }
        Ok(ideal)
    }

    fn from_rows(rows: &[(BigInt, BigInt)]) -> Result<Self> {
        let (d1, k, d2) = hnf_of_rows(rows).ok_or(Error::ZeroIdeal)?;
        to_i64(&(&d1 * &d2))?;
        Ok(IdealHNF {
            d1: to_i64(&d1)?,
            k: to_i64(&k)?,
            d2: to_i64(&d2)?,
        })
    }

    /// The unit ideal (1).
    pub fn unit() -> Self {
        IdealHNF { d1: 1, k: 0, d2: 1 }
    }

    /// The principal ideal (g), spanned by g and λg.
    pub fn from_generator(g: &RingElt) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let lg = g * &RingElt::lambda();
        let id = Self::from_rows(&[(g.a.clone(), g.b.clone()), (lg.a, lg.b)])?;
        debug_assert_eq!(BigInt::from(id.norm()), g.norm());
        Ok(id)
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::from_generator(&RingElt::from_int(n))
    }

    pub fn norm(&self) -> i64 {
        self.d1 * self.d2
    }

    pub fn is_unit(&self) -> bool {
        self.d1 == 1 && self.d2 == 1
    }

    /// Canonical representative coordinates of `x + yλ` modulo the ideal.
    pub fn reduce_coords(&self, x: &BigInt, y: &BigInt) -> (i64, i64) {
        let (m, rx) = x.div_mod_floor(&BigInt::from(self.d1));
        let ry = (y - m * self.k).mod_floor(&BigInt::from(self.d2));
        (rx.to_i64().unwrap(), ry.to_i64().unwrap())
    }

    /// Same as `reduce_coords` for machine integers.
    pub fn reduce_small(&self, x: i64, y: i64) -> (i64, i64) {
        let m = x.div_euclid(self.d1);
        let rx = x - m * self.d1;
        let ry = (y as i128 - m as i128 * self.k as i128).rem_euclid(self.d2 as i128) as i64;
        (rx, ry)
    }

    pub fn contains(&self, x: &RingElt) -> bool {
        self.reduce_coords(&x.a, &x.b) == (0, 0)
    }

    fn basis(&self) -> [RingElt; 2] {
        [RingElt::new(self.d1, self.k), RingElt::new(0, self.d2)]
    }

    /// Product ideal; fails only when the norm leaves the 64-bit range.
    pub fn try_mul(&self, other: &IdealHNF) -> Result<IdealHNF> {
        let mut rows = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                let p = &x * &y;
                rows.push((p.a, p.b));
            }
        }
        Self::from_rows(&rows)
    }

    /// Product ideal. Panics if the norm exceeds 64 bits; see [`Self::try_mul`].
    pub fn mul(&self, other: &IdealHNF) -> IdealHNF {
        let mut rows = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                let p = &x * &y;
                rows.push((p.a, p.b));
            }
        }
        let id = Self::from_rows(&rows).expect("product of nonzero ideals is nonzero");
        debug_assert_eq!(id.norm(), self.norm() * other.norm());
        id
    }

    pub fn pow(&self, e: u32) -> IdealHNF {
        (0..e).fold(IdealHNF::unit(), |acc, _| acc.mul(self))
    }

    /// True iff `self` divides `other`, i.e. `other ⊆ self`.
    pub fn divides(&self, other: &IdealHNF) -> bool {
        other.basis().iter().all(|x| self.contains(x))
    }

    /// Smallest positive rational integer in the ideal.
    pub fn min_integer(&self) -> i64 {
        self.d1 * (self.d2 / self.k.gcd(&self.d2))
    }
}

impl fmt::Display for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.d1, self.k, self.d2)
    }
}

pub fn ideal_from_generator(g: &RingElt) -> Result<IdealHNF> {
    IdealHNF::from_generator(g)
}

pub fn ideal_mul(a: &IdealHNF, b: &IdealHNF) -> IdealHNF {
    a.mul(b)
}

pub fn ideal_divides(a: &IdealHNF, b: &IdealHNF) -> bool {
    a.divides(b)
}

/// A prime ideal with its multiplicity in some factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactor {
    pub prime: IdealHNF,
    pub generator: RingElt,
    pub exponent: u32,
    pub residue_degree: u8,
    pub ramified: bool,
    /// The rational prime lying under `prime`.
    pub rational_prime: u64,
}

impl PrimeFactor {
    pub fn is_split(&self) -> bool {
        self.residue_degree == 1 && !self.ramified
    }

    pub fn is_inert(&self) -> bool {
        self.residue_degree == 2
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization of a positive integer.
pub fn factor_integer(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Decomposition of a rational prime p in Z[λ].
///
/// `exponent` is the multiplicity of each factor in (p).
pub fn split_rational_prime(p: u64) -> Result<Vec<PrimeFactor>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pi = i64::try_from(p).map_err(|_| Error::Unsupported(format!("prime {p} too large")))?;
    if p == 5 {
        let g = RingElt::new(2, 1);
        return Ok(vec![PrimeFactor {
            prime: IdealHNF::from_generator(&g)?,
            generator: g,
            exponent: 2,
            residue_degree: 1,
            ramified: true,
            rational_prime: 5,
        }]);
    }
    if matches!(p % 5, 1 | 4) {
        // roots of x² ≡ x + 1 (mod p)
        let pw = p as u128;
        let roots: Vec<u64> = (0..p)
            .filter(|&t| {
                let t = t as u128;
                (t * t + pw - t % pw + pw - 1).is_multiple_of(pw)
            })
            .collect();
        debug_assert_eq!(roots.len(), 2);
        let mut out = Vec::with_capacity(2);
        for t in roots {
            let g = gcd_pseudo(&RingElt::from_int(pi), &RingElt::new(-(t as i64), 1))?.g;
            out.push(PrimeFactor {
                prime: IdealHNF::from_generator(&g)?,
                generator: g,
                exponent: 1,
                residue_degree: 1,
                ramified: false,
                rational_prime: p,
            });
        }
        out.sort_by_key(|f| f.prime);
        debug_assert_ne!(out[0].prime, out[1].prime);
        return Ok(out);
    }
    let g = RingElt::from_int(pi);
    Ok(vec![PrimeFactor {
        prime: IdealHNF::from_generator(&g)?,
        generator: g,
        exponent: 1,
        residue_degree: 2,
        ramified: false,
        rational_prime: p,
    }])
}

/// Full prime factorization, sorted by rational prime then HNF triple.
pub fn factor_ideal(a: &IdealHNF) -> Result<Vec<PrimeFactor>> {
    let n = u64::try_from(a.norm()).map_err(|_| Error::ZeroIdeal)?;
    if n == 0 {
        return Err(Error::ZeroIdeal);
    }
    let mut out = Vec::new();
    for (p, _) in factor_integer(n) {
        for mut f in split_rational_prime(p)? {
            let mut e = 0u32;
            let mut power = f.prime;
            while power.divides(a) {
                e += 1;
                power = power.mul(&f.prime);
            }
            if e > 0 {
                f.exponent = e;
                out.push(f);
            }
        }
    }
    debug_assert_eq!(
        out.iter()
            .fold(IdealHNF::unit(), |acc, f| acc.mul(&f.prime.pow(f.exponent))),
        *a
    );
    Ok(out)
}

/// A generator of a (principal) ideal, assembled from its prime factors.
pub fn ideal_generator(a: &IdealHNF) -> Result<RingElt> {
    let mut g = RingElt::one();
    for f in factor_ideal(a)? {
        g = &g * &f.generator.pow(u64::from(f.exponent));
    }
    debug_assert_eq!(IdealHNF::from_generator(&g).ok(), Some(*a));
    Ok(g)
}

/// Exact check that `g` generates `a`; used to keep displayed generators honest.
pub fn generates(g: &RingElt, a: &IdealHNF) -> bool {
    IdealHNF::from_generator(g) == Ok(*a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> RingElt {
        RingElt::new(a, b)
    }

    fn gen(a: i64, b: i64) -> IdealHNF {
        IdealHNF::from_generator(&e(a, b)).unwrap()
    }

    #[test]
    fn rational_generators() {
        assert_eq!(gen(2, 0), IdealHNF { d1: 2, k: 0, d2: 2 });
        assert_eq!(gen(2, 0).mul(&gen(3, 0)), gen(6, 0));
        assert_eq!(gen(6, 0).norm(), 36);
    }

    #[test]
    fn associates_agree() {
        let tau = e(2, 1);
        assert_eq!(gen(2, 1).norm(), 5);
        assert_eq!(
            IdealHNF::from_generator(&(&tau * &e(0, 1))).unwrap(),
            gen(2, 1)
        );
        assert_eq!(IdealHNF::from_generator(&-&tau).unwrap(), gen(2, 1));
    }

    #[test]
    fn ramified_five() {
        let tau = gen(2, 1);
        assert_eq!(tau.mul(&tau), gen(5, 0));
        assert!(tau.divides(&gen(5, 0)));
        assert!(!gen(2, 0).divides(&gen(3, 0)));
        assert!(tau.divides(&tau));
        assert_eq!(tau.mul(&IdealHNF::unit()), tau);
    }

    #[test]
    fn zero_generator_rejected() {
        assert_eq!(IdealHNF::from_generator(&e(0, 0)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn triple_validation() {
        assert!(IdealHNF::from_triple(1, 0, 1).is_ok());
        assert!(IdealHNF::from_triple(0, 0, 1).is_err());
        assert!(IdealHNF::from_triple(1, 1, 1).is_err());
        // the lattice Z ⊕ 2Zλ is not an ideal
        assert!(IdealHNF::from_triple(1, 0, 2).is_err());
    }

    #[test]
    fn splitting_types() {
        let five = split_rational_prime(5).unwrap();
        assert_eq!(five.len(), 1);
        assert!(five[0].ramified);
        assert_eq!(five[0].exponent, 2);
        assert_eq!(five[0].prime, gen(2, 1));

        let two = split_rational_prime(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].residue_degree, 2);
        assert_eq!(two[0].prime, gen(2, 0));

        let eleven = split_rational_prime(11).unwrap();
        assert_eq!(eleven.len(), 2);
        assert_ne!(eleven[0].prime, eleven[1].prime);
        assert_eq!(eleven[0].prime.mul(&eleven[1].prime), gen(11, 0));
        assert!(eleven.iter().all(|f| f.prime.norm() == 11));

        assert_eq!(split_rational_prime(9), Err(Error::NotPrime(9)));
        assert_eq!(split_rational_prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn factorizations() {
        let six = factor_ideal(&gen(6, 0)).unwrap();
        assert_eq!(
            six.iter()
                .map(|f| (f.prime, f.exponent))
                .collect::<Vec<_>>(),
            vec![(gen(2, 0), 1), (gen(3, 0), 1)]
        );
        let five = factor_ideal(&gen(5, 0)).unwrap();
        assert_eq!(five.len(), 1);
        assert_eq!((five[0].prime, five[0].exponent), (gen(2, 1), 2));
        let eleven = factor_ideal(&gen(11, 0)).unwrap();
        assert_eq!(eleven.len(), 2);
        assert!(eleven
            .iter()
            .all(|f| f.exponent == 1 && f.prime.norm() == 11));
        assert!(factor_ideal(&IdealHNF::unit()).unwrap().is_empty());
    }

    #[test]
    fn min_integer_in_ideal() {
        assert_eq!(gen(2, 1).min_integer(), 5);
        assert_eq!(gen(4, 0).min_integer(), 4);
        let tau11 = &split_rational_prime(11).unwrap()[0];
        assert_eq!(tau11.prime.min_integer(), 11);
    }

    #[test]
    fn generator_recovery() {
        for a in [gen(10, 0), gen(2, 1).pow(3), gen(14, 0), gen(7, 3)] {
            let g = ideal_generator(&a).unwrap();
            assert!(generates(&g, &a));
        }
    }
}
