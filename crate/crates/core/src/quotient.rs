//! Finite images of H₅ in SL(2, Z[λ]/A).
//!
//! The image is enumerated breadth-first from the identity by right
//! multiplication with the reductions of S and T. In a finite group the
//! semigroup closure is the group, so parent words use only the letters
//! `S` and `T` and are generally not freely reduced.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::sl2_order;
use crate::hecke::{Letter, Mat2, Word};
use crate::ideal::IdealHNF;
use crate::residue::{ResElt, ResidueRing};

/// Default cap on enumerated group elements.
pub const DEFAULT_CAP: usize = 5_000_000;

/// A 2×2 matrix over a residue ring, entries in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResMat(pub [ResElt; 4]);

impl ResMat {
    pub fn entries(&self) -> [ResElt; 4] {
        self.0
    }
}

/// Canonical 128-bit key of a residue matrix.
pub type MatKey = u128;

/// Multiplicative hasher for the already well-mixed matrix keys.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ u64::from(b)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_u128(&mut self, n: u128) {
        let folded = (n as u64) ^ ((n >> 64) as u64).rotate_left(29);
        self.0 = (self.0 ^ folded).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        self.0 ^= self.0 >> 31;
    }
}

pub type KeyMap<V> = HashMap<MatKey, V, BuildHasherDefault<KeyHasher>>;
pub type KeySet = HashSet<MatKey, BuildHasherDefault<KeyHasher>>;

impl ResidueRing {
    pub fn mat_reduce(&self, m: &Mat2) -> ResMat {
        ResMat(m.entries().map(|e| self.reduce(e)))
    }

    pub fn mat_lift(&self, m: &ResMat) -> Mat2 {
        let [a, b, c, d] = m.0.map(|e| self.lift(e));
        Mat2::new(a, b, c, d)
    }

    pub fn mat_identity(&self) -> ResMat {
        let (o, z) = (self.one(), self.zero());
        ResMat([o, z, z, o])
    }

    #[inline]
    pub fn mat_mul(&self, l: &ResMat, r: &ResMat) -> ResMat {
        let [a, b, c, d] = l.0;
        let [e, f, g, h] = r.0;
        ResMat([
            self.add(self.mul(a, e), self.mul(b, g)),
            self.add(self.mul(a, f), self.mul(b, h)),
            self.add(self.mul(c, e), self.mul(d, g)),
            self.add(self.mul(c, f), self.mul(d, h)),
        ])
    }

    pub fn mat_det(&self, m: &ResMat) -> ResElt {
        let [a, b, c, d] = m.0;
        self.sub(self.mul(a, d), self.mul(b, c))
    }

    /// Inverse of a determinant-one residue matrix.
    pub fn mat_inv(&self, m: &ResMat) -> ResMat {
        let [a, b, c, d] = m.0;
        ResMat([d, self.neg(b), self.neg(c), a])
    }

    pub fn mat_pow(&self, m: &ResMat, mut n: u64) -> ResMat {
        let mut base = *m;
        let mut acc = self.mat_identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mat_mul(&base, &base);
            }
        }
        acc
    }

    /// `x m x⁻¹` given `x` and its inverse.
    pub fn mat_conj(&self, x: &ResMat, m: &ResMat, x_inv: &ResMat) -> ResMat {
        self.mat_mul(&self.mat_mul(x, m), x_inv)
    }

    #[inline]
    pub fn mat_key(&self, m: &ResMat) -> MatKey {
        let n = self.size() as u128;
        m.0.iter()
            .fold(0u128, |acc, &e| acc * n + u128::from(self.index(e)))
    }

    pub fn mat_from_key(&self, mut key: MatKey) -> ResMat {
        let n = self.size() as u128;
        let d2 = self.modulus.d2;
        let mut out = [ResElt { x: 0, y: 0 }; 4];
        for slot in out.iter_mut().rev() {
            let idx = (key % n) as i64;
            key /= n;
            *slot = ResElt {
                x: idx / d2,
                y: idx % d2,
            };
        }
        ResMat(out)
    }

    pub fn mat_display(&self, m: &ResMat) -> String {
        self.mat_lift(m).to_string()
    }
}

/// A finite group of residue matrices, stored by canonical key.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    ring: ResidueRing,
    elements: Vec<MatKey>,
    index: KeyMap<u32>,
}

impl MatrixGroup {
    /// Closure of `gens` under right multiplication, starting from the identity.
    pub fn generate(ring: ResidueRing, gens: &[ResMat], cap: usize) -> Result<Self> {
        let id = ring.mat_identity();
        let mut g = MatrixGroup {
            ring,
            elements: vec![ring.mat_key(&id)],
            index: KeyMap::default(),
        };
        g.index.insert(g.elements[0], 0);
        let mut cursor = 0;
        while cursor < g.elements.len() {
            let x = ring.mat_from_key(g.elements[cursor]);
            cursor += 1;
            for h in gens {
                let y = ring.mat_mul(&x, h);
                let key = ring.mat_key(&y);
                if !g.index.contains_key(&key) {
                    g.index.insert(key, g.elements.len() as u32);
                    g.elements.push(key);
                    if g.elements.len() > cap {
                        return Err(Error::CapExceeded {
                            cap,
                            partial: g.elements.len(),
                        });
                    }
                }
            }
        }
        Ok(g)
    }

    /// Wraps a set already known to be closed.
    pub fn from_elements(ring: ResidueRing, elems: impl IntoIterator<Item = ResMat>) -> Self {
        let mut g = MatrixGroup {
            ring,
            elements: Vec::new(),
            index: KeyMap::default(),
        };
        for m in elems {
            let key = ring.mat_key(&m);
            if !g.index.contains_key(&key) {
                g.index.insert(key, g.elements.len() as u32);
                g.elements.push(key);
            }
        }
        g
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &ResMat) -> bool {
        self.index.contains_key(&self.ring.mat_key(m))
    }

    pub fn element(&self, i: usize) -> ResMat {
        self.ring.mat_from_key(self.elements[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = ResMat> + '_ {
        self.elements.iter().map(|&k| self.ring.mat_from_key(k))
    }

    /// True iff every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &MatrixGroup) -> bool {
        self.elements.iter().all(|k| other.index.contains_key(k))
    }

    pub fn intersection_order(&self, other: &MatrixGroup) -> usize {
        self.elements
            .iter()
            .filter(|k| other.index.contains_key(k))
            .count()
    }

    /// First element that fails to commute with one of `xs`, if any.
    ///
    /// For a group generated by `xs` this is an abelianness test that is
    /// linear in the group order.
    pub fn non_commuting(&self, xs: &[ResMat]) -> Option<(ResMat, ResMat)> {
        let ring = self.ring;
        self.elements.par_iter().find_map_first(|&k| {
            let g = ring.mat_from_key(k);
            xs.iter()
                .find(|x| ring.mat_mul(&g, x) != ring.mat_mul(x, &g))
                .map(|x| (g, *x))
        })
    }

    pub fn commutes_with(&self, xs: &[ResMat]) -> bool {
        self.non_commuting(xs).is_none()
    }

    /// First element with `g^k ≠ 1`, if any.
    pub fn exponent_witness(&self, k: u64) -> Option<ResMat> {
        let ring = self.ring;
        let id = ring.mat_identity();
        self.elements.par_iter().find_map_first(|&key| {
            let g = ring.mat_from_key(key);
            (ring.mat_pow(&g, k) != id).then_some(g)
        })
    }

    /// True iff `g^k = 1` for every element.
    pub fn exponent_divides(&self, k: u64) -> bool {
        self.exponent_witness(k).is_none()
    }

    /// True iff conjugation by each `x` (given with its inverse) maps the
    /// group into itself.
    pub fn is_invariant_under(&self, conjugators: &[(ResMat, ResMat)]) -> bool {
        self.elements.par_iter().all(|&k| {
            let g = self.ring.mat_from_key(k);
            conjugators
                .iter()
                .all(|(x, xi)| self.contains(&self.ring.mat_conj(x, &g, xi)))
        })
    }
}

/// The image of H₅ in SL(2, Z[λ]/A), with a BFS spanning tree.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    level: IdealHNF,
    group: MatrixGroup,
    parent: Vec<Option<(u32, Letter)>>,
    s_bar: ResMat,
    t_bar: ResMat,
}

/// Enumerates the image of H₅ modulo `level`, failing once more than `cap`
/// elements have been found.
pub fn build_quotient(level: &IdealHNF, cap: usize) -> Result<QuotientGroup> {
    if level.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let ring = ResidueRing::try_new(*level)?;
    let s_bar = ring.mat_reduce(&Mat2::s());
    let t_bar = ring.mat_reduce(&Mat2::t());
    let id = ring.mat_identity();

    let mut elements = vec![ring.mat_key(&id)];
    let mut index = KeyMap::default();
    index.insert(elements[0], 0u32);
    let mut parent = vec![None];
    let mut start = 0;
    let mut layer = 0usize;
    while start < elements.len() {
        let end = elements.len();
        let products: Vec<[MatKey; 2]> = elements[start..end]
            .par_iter()
            .map(|&k| {
                let x = ring.mat_from_key(k);
                [
                    ring.mat_key(&ring.mat_mul(&x, &s_bar)),
                    ring.mat_key(&ring.mat_mul(&x, &t_bar)),
                ]
            })
            .collect();
        for (offset, pair) in products.into_iter().enumerate() {
            for (key, letter) in pair.into_iter().zip([Letter::S, Letter::T]) {
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, elements.len() as u32);
                elements.push(key);
                parent.push(Some(((start + offset) as u32, letter)));
                if elements.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: elements.len(),
                    });
                }
            }
        }
        layer += 1;
        if elements.len() > 100_000 {
            log::info!("level {level}: layer {layer}, {} elements", elements.len());
        }
        start = end;
    }
    Ok(QuotientGroup {
        level: *level,
        group: MatrixGroup {
            ring,
            elements,
            index,
        },
        parent,
        s_bar,
        t_bar,
    })
}

impl QuotientGroup {
    pub fn level(&self) -> &IdealHNF {
        &self.level
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.group.ring
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn s_bar(&self) -> ResMat {
        self.s_bar
    }

    pub fn t_bar(&self) -> ResMat {
        self.t_bar
    }

    pub fn contains(&self, m: &ResMat) -> bool {
        self.group.contains(m)
    }

    pub fn element(&self, i: usize) -> ResMat {
        self.group.element(i)
    }

    pub fn position(&self, m: &ResMat) -> Option<usize> {
        self.group
            .index
            .get(&self.ring().mat_key(m))
            .map(|&i| i as usize)
    }

    pub fn reduce(&self, m: &Mat2) -> ResMat {
        self.ring().mat_reduce(m)
    }

    /// The parent-chain word of element `i`.
    pub fn word(&self, mut i: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((p, l)) = self.parent[i] {
            letters.push(l);
            i = p as usize;
        }
        letters.reverse();
        Word(letters)
    }

    /// Checks closure under the generator images and that every element
    /// has determinant one.
    pub fn verify_closure(&self) -> bool {
        let ring = self.ring();
        let one = ring.one();
        self.group.iter().all(|x| {
            ring.mat_det(&x) == one
                && self.contains(&ring.mat_mul(&x, &self.s_bar))
                && self.contains(&ring.mat_mul(&x, &self.t_bar))
        })
    }
}

/// [H₅ : H(A)] by enumeration with the default cap.
pub fn index_h(level: &IdealHNF) -> Result<u64> {
    index_h_capped(level, DEFAULT_CAP)
}

pub fn index_h_capped(level: &IdealHNF, cap: usize) -> Result<u64> {
    Ok(build_quotient(level, cap)?.order() as u64)
}

/// True iff −I ≡ I mod A, i.e. A divides (2).
pub fn minus_i_in_level(level: &IdealHNF) -> bool {
    level.divides(&IdealHNF::from_int(2).expect("(2) is nonzero"))
}

/// [G₅ : G(A)] in the inhomogeneous group.
pub fn index_g(level: &IdealHNF) -> Result<u64> {
    index_g_from(level, index_h(level)?)
}

/// [G₅ : G(A)] from an already computed [H₅ : H(A)].
pub fn index_g_from(level: &IdealHNF, index_h: u64) -> Result<u64> {
    Ok(if minus_i_in_level(level) {
        index_h
    } else {
        index_h / 2
    })
}

/// True iff reduction H₅ → SL(2, Z[λ]/A) is onto.
pub fn is_surjective(level: &IdealHNF) -> Result<bool> {
    let full = sl2_order(level)?;
    Ok(num_bigint::BigUint::from(index_h(level)?) == full)
}

/// One word per element of the quotient.
pub fn coset_words(q: &QuotientGroup) -> Vec<(ResMat, Word)> {
    (0..q.order()).map(|i| (q.element(i), q.word(i))).collect()
}

/// Congruence conditions cut out of the full quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CongruenceSubgroup {
    /// a21 ≡ 0
    H0,
    /// a21 ≡ 0, a11 ≡ a22 ≡ 1
    H1,
}

impl fmt::Display for CongruenceSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceSubgroup::H0 => write!(f, "H0"),
            CongruenceSubgroup::H1 => write!(f, "H1"),
        }
    }
}

/// A subgroup of some quotient with a description of how it was obtained.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    pub group: MatrixGroup,
    pub description: String,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn index_in(&self, q: &QuotientGroup) -> usize {
        q.order() / self.order()
    }

    pub fn contains(&self, m: &ResMat) -> bool {
        self.group.contains(m)
    }
}

pub fn subgroup_from_predicate(q: &QuotientGroup, which: CongruenceSubgroup) -> SubgroupHandle {
    let ring = *q.ring();
    let one = ring.one();
    let keep = |m: &ResMat| {
        let [a, _, c, d] = m.0;
        ring.is_zero(c) && (which == CongruenceSubgroup::H0 || (a == one && d == one))
    };
    SubgroupHandle {
        group: MatrixGroup::from_elements(ring, q.group.iter().filter(keep)),
        description: format!("{which}({})", q.level),
    }
}

/// Closure of `gens` inside `q`.
pub fn subgroup_generated(q: &QuotientGroup, gens: &[ResMat]) -> Result<SubgroupHandle> {
    let ring = *q.ring();
    if let Some(bad) = gens.iter().find(|g| !q.contains(g)) {
        return Err(Error::NotInGroup(ring.mat_display(bad)));
    }
    Ok(SubgroupHandle {
        group: MatrixGroup::generate(ring, gens, q.order())?,
        description: format!("<{} generators> mod {}", gens.len(), q.level),
    })
}

/// Subgroup generated by all k-th powers.
pub fn power_subgroup(q: &QuotientGroup, k: u64) -> SubgroupHandle {
    let ring = *q.ring();
    let mut powers: Vec<MatKey> = q
        .group
        .elements
        .par_iter()
        .map(|&key| ring.mat_key(&ring.mat_pow(&ring.mat_from_key(key), k)))
        .collect();
    powers.sort_unstable();
    powers.dedup();

    // Add a power as a generator only when it is not yet covered.
    let mut gens: Vec<ResMat> = Vec::new();
    let mut current = MatrixGroup::generate(ring, &[], 1).expect("trivial group");
    for key in powers {
        if current.index.contains_key(&key) {
            continue;
        }
        gens.push(ring.mat_from_key(key));
        current = MatrixGroup::generate(ring, &gens, q.order()).expect("subgroup of q");
    }
    SubgroupHandle {
        group: current,
        description: format!("<g^{k}> mod {}", q.level),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElt;

    fn level(a: i64, b: i64) -> IdealHNF {
        IdealHNF::from_generator(&RingElt::new(a, b)).unwrap()
    }

    #[test]
    fn small_quotient_orders() {
        assert_eq!(index_h(&level(2, 0)).unwrap(), 10);
        assert_eq!(index_h(&level(2, 1)).unwrap(), 120);
        assert_eq!(index_h(&level(3, 0)).unwrap(), 120);
        assert_eq!(index_h(&level(4, 0)).unwrap(), 320);
    }

    #[test]
    fn unit_level_rejected() {
        assert_eq!(
            build_quotient(&IdealHNF::unit(), 10).unwrap_err(),
            Error::UnitIdeal
        );
    }

    #[test]
    fn cap_is_enforced() {
        match build_quotient(&level(3, 0), 50) {
            Err(Error::CapExceeded { cap: 50, partial }) => assert!(partial > 50),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minus_identity_levels() {
        assert!(minus_i_in_level(&level(2, 0)));
        assert!(!minus_i_in_level(&level(4, 0)));
        assert!(!minus_i_in_level(&level(3, 0)));
        assert_eq!(index_g(&level(2, 0)).unwrap(), 10);
        assert_eq!(index_g(&level(4, 0)).unwrap(), 160);
    }

    #[test]
    fn keys_round_trip() {
        let ring = ResidueRing::new(level(7, 3));
        let m = ring.mat_reduce(&Mat2::from_coords([(5, 2), (-3, 1), (9, 9), (0, -4)]));
        assert_eq!(ring.mat_from_key(ring.mat_key(&m)), m);
    }

    #[test]
    fn words_reduce_to_elements() {
        let q = build_quotient(&level(2, 1), DEFAULT_CAP).unwrap();
        assert!(q.word(0).is_empty());
        for (m, w) in coset_words(&q) {
            assert_eq!(q.reduce(&w.eval()), m);
        }
        assert!(q.verify_closure());
    }

    #[test]
    fn borel_subgroups() {
        let q = build_quotient(&level(2, 0), DEFAULT_CAP).unwrap();
        let h0 = subgroup_from_predicate(&q, CongruenceSubgroup::H0);
        assert_eq!(q.order() % h0.order(), 0);
        let h1 = subgroup_from_predicate(&q, CongruenceSubgroup::H1);
        assert!(h1.group.is_subset_of(&h0.group));
    }

    #[test]
    fn generated_subgroups() {
        let q = build_quotient(&level(4, 0), DEFAULT_CAP).unwrap();
        let id = q.ring().mat_identity();
        assert_eq!(subgroup_generated(&q, &[id]).unwrap().order(), 1);
        assert_eq!(subgroup_generated(&q, &[]).unwrap().order(), 1);
        let whole = subgroup_generated(&q, &[q.s_bar(), q.t_bar()]).unwrap();
        assert_eq!(whole.order(), q.order());
        // J is not in the image (determinant −1)
        let j = q.reduce(&Mat2::j());
        assert!(matches!(
            subgroup_generated(&q, &[j]),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn first_power_subgroup_is_everything() {
        let q = build_quotient(&level(3, 0), DEFAULT_CAP).unwrap();
        assert_eq!(power_subgroup(&q, 1).order(), q.order());
    }
}
