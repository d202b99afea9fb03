//! Exact computations in the Hecke group H₅ = ⟨S, T⟩ over the golden ring
//! Z[λ], λ = 2cos(π/5).
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: arithmetic in Z[λ], exact real comparison, pseudo-Euclidean
//!   division and gcd, unit logarithms.
//! * [`ideal`] and [`residue`]: ideals as HNF lattices, prime splitting and
//!   factorization, the finite rings Z[λ]/A.
//! * [`hecke`]: 2×2 matrices, words in S and T, reduced forms and the
//!   membership test.
//! * [`quotient`]: breadth-first enumeration of the image of H₅ in
//!   SL(2, Z[λ]/A), coset words and subgroups.
//! * [`formula`]: closed-form principal congruence indices.
//! * [`verify`]: finite checks of the identities and lemmas the index
//!   computation rests on.

pub mod error;
pub mod formula;
pub mod hecke;
pub mod ideal;
pub mod parse;
pub mod quotient;
pub mod residue;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use formula::{index_bound_step, index_formula, index_prime_power, sl2_order, IndexReport};
pub use hecke::{
    complete_column, eval_word, is_member, is_reduced, parabolic_conjugate, reduce_fraction,
    Letter, Mat2, ReductionResult, Word,
};
pub use ideal::{factor_ideal, split_rational_prime, IdealHNF, PrimeFactor};
pub use quotient::{build_quotient, index_g, index_h, is_surjective, QuotientGroup};
pub use residue::{ResElt, ResidueRing};
pub use ring::{compare_real, divmod_pseudo, gcd_pseudo, unit_log, RingElt, UnitDecomposition};
