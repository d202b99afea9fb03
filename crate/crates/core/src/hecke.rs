//! Matrices over Z[λ], words in S and T, and the reduced-form machinery
//! that decides membership in H₅.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{gcd_pseudo, unit_log, RingElt, UnitDecomposition};

/// A 2×2 matrix `[[a11, a12], [a21, a22]]` over Z[λ].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a11: RingElt,
    pub a12: RingElt,
    pub a21: RingElt,
    pub a22: RingElt,
}

impl Mat2 {
    pub fn new(a11: RingElt, a12: RingElt, a21: RingElt, a22: RingElt) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    /// Convenience constructor from `(a, b)` coordinate pairs.
    pub fn from_coords(e: [(i64, i64); 4]) -> Self {
        let [p, q, r, s] = e.map(|(a, b)| RingElt::new(a, b));
        Mat2::new(p, q, r, s)
    }

    pub fn identity() -> Self {
        Mat2::scalar(RingElt::one())
    }

    pub fn scalar(x: RingElt) -> Self {
        Mat2::new(x.clone(), RingElt::zero(), RingElt::zero(), x)
    }

    pub fn s() -> Self {
        Mat2::from_coords([(0, 0), (1, 0), (-1, 0), (0, 0)])
    }

    pub fn s_inv() -> Self {
        Mat2::from_coords([(0, 0), (-1, 0), (1, 0), (0, 0)])
    }

    pub fn t() -> Self {
        Mat2::from_coords([(1, 0), (0, 1), (0, 0), (1, 0)])
    }

    /// Tⁿ = [[1, nλ], [0, 1]].
    pub fn t_pow(n: impl Into<BigInt>) -> Self {
        Mat2::new(
            RingElt::one(),
            RingElt::new(0, n.into()),
            RingElt::zero(),
            RingElt::one(),
        )
    }

    /// [[1, 0], [nλ, 1]] = S T⁻ⁿ S⁻¹.
    pub fn lower_pow(n: impl Into<BigInt>) -> Self {
        Mat2::new(
            RingElt::one(),
            RingElt::zero(),
            RingElt::new(0, n.into()),
            RingElt::one(),
        )
    }

    /// The involution J = [[0, 1], [1, 0]]; it normalizes H₅ but is not in it.
    pub fn j() -> Self {
        Mat2::from_coords([(0, 0), (1, 0), (1, 0), (0, 0)])
    }

    pub fn det(&self) -> RingElt {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_sl2(&self) -> Mat2 {
        debug_assert!(self.det().is_one());
        Mat2::new(self.a22.clone(), -&self.a12, -&self.a21, self.a11.clone())
    }

    /// Inverse when the determinant is a unit.
    pub fn inverse(&self) -> Option<Mat2> {
        let inv = self.det().unit_inverse()?;
        Some(Mat2::new(
            &self.a22 * &inv,
            -(&self.a12 * &inv),
            -(&self.a21 * &inv),
            &self.a11 * &inv,
        ))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a11, -&self.a12, -&self.a21, -&self.a22)
    }

    pub fn pow(&self, n: i64) -> Mat2 {
        let mut base = if n < 0 {
            self.inverse()
                .expect("negative power of a non-invertible matrix")
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `X · self · X⁻¹`.
    pub fn conjugate_by(&self, x: &Mat2) -> Mat2 {
        &(x * self) * &x.inverse().expect("conjugator must be invertible")
    }

    pub fn entries(&self) -> [&RingElt; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }

    pub fn column(&self, j: usize) -> (RingElt, RingElt) {
        match j {
            0 => (self.a11.clone(), self.a21.clone()),
            1 => (self.a12.clone(), self.a22.clone()),
            _ => panic!("column index out of range"),
        }
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        Mat2 {
            a11: &self.a11 * &r.a11 + &self.a12 * &r.a21,
            a12: &self.a11 * &r.a12 + &self.a12 * &r.a22,
            a21: &self.a21 * &r.a11 + &self.a22 * &r.a21,
            a22: &self.a21 * &r.a12 + &self.a22 * &r.a22,
        }
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        &self * &r
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Mat2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_matrix(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S,
    SInv,
    T,
    TInv,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::S => Mat2::s(),
            Letter::SInv => Mat2::s_inv(),
            Letter::T => Mat2::t(),
            Letter::TInv => Mat2::t_pow(-1),
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::S => 'S',
            Letter::SInv => 's',
            Letter::T => 'T',
            Letter::TInv => 't',
        }
    }
}

/// A word in S, S⁻¹, T, T⁻¹, evaluated left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    fn push_power(&mut self, letter: Letter, n: &BigInt) {
        let count = n.abs().to_usize().expect("quotient fits in memory");
        let l = if n.is_negative() {
            letter.inverse()
        } else {
            letter
        };
        self.0.extend(std::iter::repeat_n(l, count));
    }

    pub fn eval(&self) -> Mat2 {
        eval_word(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_word(s)
    }
}

/// Left-to-right product of the generator matrices of `w`.
pub fn eval_word(w: &Word) -> Mat2 {
    w.0.iter()
        .fold(Mat2::identity(), |acc, l| &acc * &l.matrix())
}

fn strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// Output of the reduced-form algorithm for a pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    /// The reduced factor e(a/b): `(aλᵉ, bλᵉ)` is a column of an H₅ matrix.
    pub e: i64,
    /// H₅ matrix whose first column is `(aλᵉ, bλᵉ)`.
    pub completion: Mat2,
    /// A word in S, T evaluating to `completion`.
    pub word: Word,
    /// Decomposition of the final remainder `±λ^(−e)`.
    pub unit: UnitDecomposition,
    #[serde(serialize_with = "strings")]
    pub quotients: Vec<BigInt>,
}

/// Runs the pseudo-Euclidean recursion on `(a, b)` and assembles the
/// elementary matrices into an H₅ completion.
///
/// Each step `x = (qλ)y + r` gives `(x, y)ᵀ = Tᵠ J (y, r)ᵀ`. Pairs of J
/// combine as `J Tᵠ J = S T⁻ᵠ S⁻¹`, and a leftover J acting on `(g, 0)ᵀ`
/// is replaced by S⁻¹, so the product stays inside H₅.
pub fn reduce_fraction(a: &RingElt, b: &RingElt) -> Result<ReductionResult> {
    let gcd = gcd_pseudo(a, b)?;
    let unit = unit_log(&gcd.g).map_err(|_| Error::NotCoprime(gcd.g.to_string()))?;

    let mut word = Word::empty();
    let mut completion = Mat2::identity();
    for (i, q) in gcd.steps.iter().enumerate() {
        if i % 2 == 0 {
            word.push_power(Letter::T, q);
            completion = &completion * &Mat2::t_pow(q.clone());
        } else {
            word.0.push(Letter::S);
            word.push_power(Letter::TInv, q);
            word.0.push(Letter::SInv);
            completion = &completion * &Mat2::lower_pow(q.clone());
        }
    }
    if gcd.steps.len() % 2 == 1 {
        word.0.push(Letter::SInv);
        completion = &completion * &Mat2::s_inv();
    }
    if unit.sign < 0 {
        // −I = S²
        word.0.extend([Letter::S, Letter::S]);
        completion = completion.neg();
    }
    let e = -unit.exponent;
    debug_assert_eq!(completion.column(0), {
        let s = RingElt::lambda_pow(e);
        (a * &s, b * &s)
    });
    Ok(ReductionResult {
        e,
        completion,
        word,
        unit,
        quotients: gcd.steps,
    })
}

/// True iff `(a, b)` is already a column of some H₅ matrix.
pub fn is_reduced(a: &RingElt, b: &RingElt) -> Result<bool> {
    Ok(reduce_fraction(a, b)?.e == 0)
}

/// Membership test: determinant one and both columns reduced.
pub fn is_member(m: &Mat2) -> bool {
    if !m.det().is_one() {
        return false;
    }
    let col_ok = |x: &RingElt, y: &RingElt| matches!(is_reduced(x, y), Ok(true));
    col_ok(&m.a11, &m.a21) && col_ok(&m.a12, &m.a22)
}

/// An H₅ matrix with first column `(a, c)`.
pub fn complete_column(a: &RingElt, c: &RingElt) -> Result<Mat2> {
    let red = reduce_fraction(a, c)?;
    if red.e != 0 {
        return Err(Error::NotReduced {
            column: format!("({a}, {c})"),
            e: red.e,
        });
    }
    Ok(red.completion)
}

/// `X Tᵐ X⁻¹` for `X = complete_column(a, c)`, which equals
/// `[[1 − acmλ, a²mλ], [−c²mλ, 1 + acmλ]]`.
pub fn parabolic_conjugate(a: &RingElt, c: &RingElt, m: i64) -> Result<Mat2> {
    let x = complete_column(a, c)?;
    Ok(Mat2::t_pow(m).conjugate_by(&x))
}

/// The closed form of the parabolic conjugate, independent of the completion.
pub fn parabolic_closed_form(a: &RingElt, c: &RingElt, m: i64) -> Mat2 {
    let ml = RingElt::new(0, m);
    let acm = &(a * c) * &ml;
    Mat2::new(
        RingElt::one() - &acm,
        &(a * a) * &ml,
        -(&(c * c) * &ml),
        RingElt::one() + &acm,
    )
}
