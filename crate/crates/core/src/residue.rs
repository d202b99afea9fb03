//! The finite rings Z[λ]/A with canonical representatives.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealHNF;
use crate::ring::RingElt;

/// A residue class `x + yλ` with `0 ≤ x < d1`, `0 ≤ y < d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResElt {
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueRing {
    pub modulus: IdealHNF,
}

/// Largest supported `N(A)`; keeps all intermediate products in `i64` and
/// matrix keys injective in `u128`.
pub const MAX_RESIDUE_NORM: i64 = 1 << 30;

impl ResidueRing {
    /// Panics if `N(modulus)` exceeds [`MAX_RESIDUE_NORM`].
    pub fn new(modulus: IdealHNF) -> Self {
        Self::try_new(modulus).expect("residue ring modulus too large")
    }

    pub fn try_new(modulus: IdealHNF) -> Result<Self> {
        if modulus.norm() > MAX_RESIDUE_NORM {
            return Err(Error::Unsupported(format!(
                "residue rings need norm <= 2^30, {modulus} has norm {}",
                modulus.norm()
            )));
        }
        Ok(ResidueRing { modulus })
    }

    pub fn size(&self) -> i64 {
        self.modulus.norm()
    }

    pub fn zero(&self) -> ResElt {
        ResElt { x: 0, y: 0 }
    }

    pub fn one(&self) -> ResElt {
        self.reduce_small(1, 0)
    }

    pub fn reduce(&self, v: &RingElt) -> ResElt {
        let (x, y) = self.modulus.reduce_coords(&v.a, &v.b);
        ResElt { x, y }
    }

    #[inline]
    pub fn reduce_small(&self, x: i64, y: i64) -> ResElt {
        let (x, y) = self.modulus.reduce_small(x, y);
        ResElt { x, y }
    }

    /// The canonical integer lift.
    pub fn lift(&self, e: ResElt) -> RingElt {
        RingElt::new(e.x, e.y)
    }

    #[inline]
    pub fn add(&self, u: ResElt, v: ResElt) -> ResElt {
        self.reduce_small(u.x + v.x, u.y + v.y)
    }

    #[inline]
    pub fn sub(&self, u: ResElt, v: ResElt) -> ResElt {
        self.reduce_small(u.x - v.x, u.y - v.y)
    }

    #[inline]
    pub fn neg(&self, u: ResElt) -> ResElt {
        self.reduce_small(-u.x, -u.y)
    }

    #[inline]
    pub fn mul(&self, u: ResElt, v: ResElt) -> ResElt {
        let bb = u.y * v.y;
        self.reduce_small(u.x * v.x + bb, u.x * v.y + v.x * u.y + bb)
    }

    /// Dense index in `0..size`, used for compact hashing.
    #[inline]
    pub fn index(&self, u: ResElt) -> u64 {
        (u.x * self.modulus.d2 + u.y) as u64
    }

    /// All canonical representatives, in index order.
    pub fn elements(&self) -> impl Iterator<Item = ResElt> + '_ {
        let d2 = self.modulus.d2;
        (0..self.modulus.d1).flat_map(move |x| (0..d2).map(move |y| ResElt { x, y }))
    }

    pub fn is_zero(&self, u: ResElt) -> bool {
        u.x == 0 && u.y == 0
    }

    pub fn from_int(&self, n: i64) -> ResElt {
        self.reduce_small(n, 0)
    }

    pub fn reduce_big(&self, a: &BigInt, b: &BigInt) -> ResElt {
        let (x, y) = self.modulus.reduce_coords(a, b);
        ResElt { x, y }
    }
}

/// Free-function form of `ResidueRing::reduce`.
pub fn reduce(x: &RingElt, ring: &ResidueRing) -> ResElt {
    ring.reduce(x)
}
