//! Exact arithmetic in the golden ring Z[λ], λ² = λ + 1.
//!
//! Elements are stored as integer coordinates `a + bλ`. Order questions are
//! answered under the real embedding λ ↦ (1+√5)/2 using integer sign tests
//! only, so every comparison is exact regardless of coordinate size.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `a + bλ` of Z[λ].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RingElt {
    pub a: BigInt,
    pub b: BigInt,
}

/// `x = sign · λ^exponent` for a unit `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitDecomposition {
    pub sign: i8,
    pub exponent: i64,
}

impl UnitDecomposition {
    pub fn to_elt(self) -> RingElt {
        let u = RingElt::lambda_pow(self.exponent);
        if self.sign < 0 {
            -u
        } else {
            u
        }
    }
}

impl RingElt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RingElt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        RingElt::new(a, 0)
    }

    pub fn zero() -> Self {
        RingElt::new(0, 0)
    }

    pub fn one() -> Self {
        RingElt::new(1, 0)
    }

    /// The golden unit λ.
    pub fn lambda() -> Self {
        RingElt::new(0, 1)
    }

    /// λ^k for any integer k, using λ⁻¹ = λ − 1.
    pub fn lambda_pow(k: i64) -> Self {
        let base = if k >= 0 {
            RingElt::lambda()
        } else {
            RingElt::new(-1, 1)
        };
        base.pow(k.unsigned_abs())
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = RingElt::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugate: λ ↦ 1 − λ.
    pub fn conj(&self) -> Self {
        RingElt {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// a² + ab − b², the field norm with its sign.
    pub fn signed_norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Absolute norm |a² + ab − b²|.
    pub fn norm(&self) -> BigInt {
        self.signed_norm().abs()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Sign of the real embedding.
    pub fn sign(&self) -> Ordering {
        // 2(a + bλ) = (2a + b) + b√5
        let u: BigInt = 2 * &self.a + &self.b;
        let v = &self.b;
        match (u.sign(), v.sign()) {
            (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
            (Sign::Minus, Sign::Minus)
            | (Sign::Minus, Sign::NoSign)
            | (Sign::NoSign, Sign::Minus) => Ordering::Less,
            (Sign::Plus, Sign::Plus) | (Sign::Plus, Sign::NoSign) | (Sign::NoSign, Sign::Plus) => {
                Ordering::Greater
            }
            (Sign::Plus, Sign::Minus) => (&u * &u).cmp(&(BigInt::from(5) * v * v)),
            (Sign::Minus, Sign::Plus) => (BigInt::from(5) * v * v).cmp(&(&u * &u)),
        }
    }

    /// Absolute value under the real embedding.
    pub fn abs_real(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d` if it lies in Z[λ].
    pub fn div_exact(&self, d: &RingElt) -> Option<RingElt> {
        if d.is_zero() {
            return None;
        }
        let n = d.signed_norm();
        let num = self * &d.conj();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(RingElt { a: qa, b: qb })
        } else {
            None
        }
    }

    pub fn divides(&self, x: &RingElt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<RingElt> {
        RingElt::one().div_exact(self)
    }

    fn max_bits(&self) -> u64 {
        self.a.bits().max(self.b.bits())
    }
}

/// Order of `x` and `y` under the real embedding.
pub fn compare_real(x: &RingElt, y: &RingElt) -> Ordering {
    (x - y).sign()
}

impl PartialOrd for RingElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by real value; equal real values force equal coordinates.
impl Ord for RingElt {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_real(self, other)
    }
}

impl From<i64> for RingElt {
    fn from(a: i64) -> Self {
        RingElt::from_int(a)
    }
}

impl From<BigInt> for RingElt {
    fn from(a: BigInt) -> Self {
        RingElt::from_int(a)
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}L", self.a, sign, self.b.abs())
    }
}

impl Serialize for RingElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for RingElt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_element(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<RingElt> for RingElt {
            type Output = RingElt;
            fn $method(self, rhs: RingElt) -> RingElt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElt> for RingElt {
            type Output = RingElt;
            fn $method(self, rhs: &RingElt) -> RingElt {
                (&self).$method(rhs)
            }
        }
        impl $tr<RingElt> for &RingElt {
            type Output = RingElt;
            fn $method(self, rhs: RingElt) -> RingElt {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&RingElt> for &RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        RingElt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub<&RingElt> for &RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        RingElt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul<&RingElt> for &RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        let bb = &self.b * &rhs.b;
        RingElt {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b + bb,
        }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&RingElt> for RingElt {
    fn add_assign(&mut self, rhs: &RingElt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&RingElt> for RingElt {
    fn sub_assign(&mut self, rhs: &RingElt) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul<&RingElt> for &BigInt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        RingElt {
            a: self * &rhs.a,
            b: self * &rhs.b,
        }
    }
}

/// Result of one pseudo-Euclidean division `a = (qλ)b + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision {
    pub q: BigInt,
    pub r: RingElt,
}

/// Where `2r` sits relative to the window `(−|c|, |c|]`.
fn window_position(r: &RingElt, c_abs: &RingElt) -> Ordering {
    let twice = r + r;
    if compare_real(&twice, c_abs) == Ordering::Greater {
        Ordering::Greater
    } else if compare_real(&twice, &-c_abs) != Ordering::Greater {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Floor of `(s + t√5) / m` for `m > 0`, up to an error of one.
fn approx_floor(s: &BigInt, t: &BigInt, m: &BigInt) -> BigInt {
    let root = (BigInt::from(5) * t * t).sqrt();
    let irr = if t.is_negative() { -root } else { root };
    (s + irr).div_floor(m)
}

/// Pseudo-Euclidean division: the unique integer `q` with
/// `a = (qλ)b + r` and `−|bλ|/2 < r ≤ |bλ|/2`.
pub fn divmod_pseudo(a: &RingElt, b: &RingElt) -> Result<PseudoDivision> {
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let c = b * &RingElt::lambda();
    let c_abs = c.abs_real();

    // a/c = a·c̄ / N(c), real value (2s + t + t√5) / 2N.
    let n = c.signed_norm();
    let num = a * &c.conj();
    let (mut s, mut t, mut m) = (
        BigInt::from(2) * &num.a + &num.b,
        num.b.clone(),
        BigInt::from(2) * n,
    );
    if m.is_negative() {
        s = -s;
        t = -t;
        m = -m;
    }
    // round(a/c) ~ floor(a/c + 1/2)
    let mut q = approx_floor(
        &(BigInt::from(2) * &s + &m),
        &(BigInt::from(2) * &t),
        &(BigInt::from(2) * &m),
    );

    // Exact correction; the window is half-open so exactly one q fits.
    for _ in 0..8 {
        let r = a - &(&q * &c);
        match window_position(&r, &c_abs) {
            Ordering::Equal => return Ok(PseudoDivision { q, r }),
            // r too large: move it down by |c|.
            Ordering::Greater => {
                if c.sign() == Ordering::Greater {
                    q += 1
                } else {
                    q -= 1
                }
            }
            Ordering::Less => {
                if c.sign() == Ordering::Greater {
                    q -= 1
                } else {
                    q += 1
                }
            }
        }
    }
    unreachable!("rounded quotient estimate off by more than eight")
}

/// Outcome of the iterated pseudo-Euclidean recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoGcd {
    /// Last nonzero remainder.
    pub g: RingElt,
    /// Quotients q₁, q₂, … in order.
    pub steps: Vec<BigInt>,
}

impl PseudoGcd {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

/// Step cap for the gcd recursion, a safeguard that should never trigger.
pub fn gcd_iteration_cap(a: &RingElt, b: &RingElt) -> usize {
    64 + 4 * a.max_bits().max(b.max_bits()) as usize
}

/// Iterates `x = (qλ)y + r`, `(x, y) ← (y, r)` until the remainder vanishes.
pub fn gcd_pseudo(a: &RingElt, b: &RingElt) -> Result<PseudoGcd> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let cap = gcd_iteration_cap(a, b);
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut steps = Vec::new();
    while !y.is_zero() {
        if steps.len() >= cap {
            return Err(Error::IterationCap { cap });
        }
        let PseudoDivision { q, r } = divmod_pseudo(&x, &y)?;
        steps.push(q);
        x = std::mem::replace(&mut y, r);
    }
    Ok(PseudoGcd { g: x, steps })
}

/// Writes a unit as `sign · λ^k`.
pub fn unit_log(x: &RingElt) -> Result<UnitDecomposition> {
    if !x.is_unit() {
        return Err(Error::NotAUnit(x.to_string()));
    }
    let sign: i8 = if x.sign() == Ordering::Less { -1 } else { 1 };
    let mut y = x.abs_real();
    let one = RingElt::one();
    let lambda = RingElt::lambda();
    let lambda_inv = RingElt::new(-1, 1);
    let mut k = 0i64;
    loop {
        match compare_real(&y, &one) {
            Ordering::Equal => break,
            Ordering::Greater => {
                y = &y * &lambda_inv;
                k += 1;
            }
            Ordering::Less => {
                y = &y * &lambda;
                k -= 1;
            }
        }
    }
    debug_assert!(y.is_one());
    Ok(UnitDecomposition { sign, exponent: k })
}
