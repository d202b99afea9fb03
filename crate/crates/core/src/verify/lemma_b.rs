//! Invariant subgroups of ⟨Δ⟩ ≅ F₅³ under conjugation by S, T and J.
//!
//! With basis `r = (ac)(ab)`, `s = (ac)(ab)⁻¹`, `t = bc`, conjugation acts
//! linearly. The action is derived twice: from the stated relations, and
//! by conjugating inside SL(2, Z[λ]/5) and solving for coordinates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::Mat2;
use crate::ideal::IdealHNF;
use crate::quotient::ResMat;
use crate::residue::ResidueRing;
use crate::ring::RingElt;

use super::section7::{delta, tau};
use super::{Check, Provenance, VerificationReport};

const P: u8 = 5;

/// A 3×3 matrix over F₅; column `j` holds the coordinates of the image of
/// the `j`-th basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ActionMatrix(pub [[u8; 3]; 3]);

impl ActionMatrix {
    fn from_columns(cols: [[i8; 3]; 3]) -> Self {
        let mut m = [[0u8; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[i][j] = v.rem_euclid(P as i8) as u8;
            }
        }
        ActionMatrix(m)
    }

    pub fn apply(&self, v: [u8; 3]) -> [u8; 3] {
        let mut out = [0u8; 3];
        for (i, row) in self.0.iter().enumerate() {
            let s: u32 = row
                .iter()
                .zip(v)
                .map(|(&a, b)| u32::from(a) * u32::from(b))
                .sum();
            out[i] = (s % u32::from(P)) as u8;
        }
        out
    }

    pub fn det(&self) -> u8 {
        let m = self.0.map(|r| r.map(i32::from));
        let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        d.rem_euclid(i32::from(P)) as u8
    }
}

impl fmt::Display for ActionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Actions of S, T, J read off the conjugation relations
/// `r^S = s⁻¹, r^T = rs⁻¹t², r^J = s, s^S = r⁻¹, s^T = s, s^J = r,
/// t^S = t⁻¹, t^T = st, t^J = t⁻¹`.
pub fn action_from_relations() -> [ActionMatrix; 3] {
    [
        ActionMatrix::from_columns([[0, -1, 0], [-1, 0, 0], [0, 0, -1]]),
        ActionMatrix::from_columns([[1, -1, 2], [0, 1, 0], [0, 1, 1]]),
        ActionMatrix::from_columns([[0, 1, 0], [1, 0, 0], [0, 0, -1]]),
    ]
}

struct Basis {
    ring: ResidueRing,
    /// `[r, s, t]` modulo 5.
    elements: [ResMat; 3],
    /// `r^i s^j t^k` → `(i, j, k)`.
    coords: HashMap<ResMat, [u8; 3]>,
}

fn basis() -> Result<Basis> {
    let ring = ResidueRing::new(IdealHNF::from_int(5)?);
    let [a, b, c] = delta().map(|m| ring.mat_reduce(&m));
    let mul = |x: &ResMat, y: &ResMat| ring.mat_mul(x, y);
    let ac = mul(&a, &c);
    let ab = mul(&a, &b);
    let r = mul(&ac, &ab);
    let s = mul(&ac, &ring.mat_inv(&ab));
    let t = mul(&b, &c);

    let mut coords = HashMap::new();
    for i in 0..P {
        for j in 0..P {
            for k in 0..P {
                let g = mul(
                    &mul(&ring.mat_pow(&r, i.into()), &ring.mat_pow(&s, j.into())),
                    &ring.mat_pow(&t, k.into()),
                );
                if coords.insert(g, [i, j, k]).is_some() {
                    return Err(Error::Unsupported(
                        "r, s, t are not independent modulo 5".into(),
                    ));
                }
            }
        }
    }
    Ok(Basis {
        ring,
        elements: [r, s, t],
        coords,
    })
}

/// Actions of S, T, J computed by conjugating `r, s, t` modulo 5.
pub fn action_from_conjugation() -> Result<[ActionMatrix; 3]> {
    let basis = basis()?;
    let ring = basis.ring;
    let conjugators = [Mat2::s(), Mat2::t(), Mat2::j()];
    let mut out = [ActionMatrix([[0; 3]; 3]); 3];
    for (slot, x) in out.iter_mut().zip(conjugators) {
        let xr = ring.mat_reduce(&x);
        let xi = ring.mat_reduce(&x.inverse().expect("unit determinant"));
        for (j, e) in basis.elements.iter().enumerate() {
            let image = ring.mat_conj(&xr, e, &xi);
            let v = basis.coords.get(&image).ok_or_else(|| {
                Error::NotInGroup(format!(
                    "conjugate {} outside <r,s,t>",
                    ring.mat_display(&image)
                ))
            })?;
            for (row, &x) in slot.0.iter_mut().zip(v.iter()) {
                row[j] = x;
            }
        }
    }
    Ok(out)
}

/// A subspace of F₅³ as a bitmask over the 125 vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace(pub u128);

fn vec_index(v: [u8; 3]) -> u32 {
    u32::from(v[0]) * 25 + u32::from(v[1]) * 5 + u32::from(v[2])
}

fn index_vec(i: u32) -> [u8; 3] {
    [(i / 25) as u8, (i / 5 % 5) as u8, (i % 5) as u8]
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace(1)
    }

    pub fn contains(&self, v: [u8; 3]) -> bool {
        self.0 >> vec_index(v) & 1 == 1
    }

    pub fn vectors(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        (0..125).filter(|&i| self.0 >> i & 1 == 1).map(index_vec)
    }

    pub fn size(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn dim(&self) -> u32 {
        self.size().ilog(u32::from(P))
    }

    /// Span of `self` and `v`.
    pub fn extend(&self, v: [u8; 3]) -> Subspace {
        let mut mask = 0u128;
        for w in self.vectors() {
            for c in 0..P {
                let u = [0, 1, 2].map(|i| (w[i] + c * v[i]) % P);
                mask |= 1 << vec_index(u);
            }
        }
        Subspace(mask)
    }

    pub fn is_invariant(&self, m: &ActionMatrix) -> bool {
        self.vectors().all(|v| self.contains(m.apply(v)))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} subspace containing", self.dim())?;
        let nonzero: Vec<String> = self
            .vectors()
            .filter(|v| *v != [0, 0, 0])
            .take(4)
            .map(|v| format!(" ({},{},{})", v[0], v[1], v[2]))
            .collect();
        write!(
            f,
            "{}",
            if nonzero.is_empty() {
                " only 0".into()
            } else {
                nonzero.concat()
            }
        )
    }
}

/// All subspaces of F₅³, in order of first discovery by dimension.
pub fn subspaces() -> Vec<Subspace> {
    let mut seen = BTreeSet::new();
    seen.insert(Subspace::zero());
    let mut layer = vec![Subspace::zero()];
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for sub in &layer {
            for i in 0..125 {
                let v = index_vec(i);
                if sub.contains(v) {
                    continue;
                }
                let bigger = sub.extend(v);
                if seen.insert(bigger) {
                    next.push(bigger);
                }
            }
        }
        all.extend(&next);
        layer = next;
    }
    all
}

pub fn invariant_subspaces(actions: &[ActionMatrix]) -> Vec<Subspace> {
    subspaces()
        .into_iter()
        .filter(|s| actions.iter().all(|m| s.is_invariant(m)))
        .collect()
}

/// `r^i s^j t^k` written out, for witnesses.
fn as_word(v: [u8; 3]) -> String {
    let parts: Vec<String> = ["r", "s", "t"]
        .iter()
        .zip(v)
        .filter(|(_, e)| *e != 0)
        .map(|(g, e)| {
            if e == 1 {
                g.to_string()
            } else {
                format!("{g}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

fn column_differences(computed: &ActionMatrix, stated: &ActionMatrix) -> String {
    let col = |m: &ActionMatrix, j: usize| [m.0[0][j], m.0[1][j], m.0[2][j]];
    (0..3)
        .filter(|&j| col(computed, j) != col(stated, j))
        .map(|j| {
            format!(
                "image of {}: conjugation gives {}, relations give {}",
                ["r", "s", "t"][j],
                as_word(col(computed, j)),
                as_word(col(stated, j))
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn residue_form(ring: &ResidueRing, u: [i64; 4]) -> ResMat {
    let tau = tau();
    let [a, b, c, d] = u.map(|x| &RingElt::from_int(x) * &tau);
    ring.mat_reduce(&Mat2::new(RingElt::one() + a, b, c, RingElt::one() + d))
}

pub fn verify_lemma_b() -> VerificationReport {
    let name = "lemma_b";
    let mut checks = Vec::new();
    let basis = match basis() {
        Ok(b) => b,
        Err(e) => return VerificationReport::new(name, vec![Check::error("basis", e)]),
    };
    let ring = basis.ring;
    checks.push(Check::equal(
        "basis_span",
        basis.coords.len(),
        125,
        Provenance::Stated,
    ));
    let forms = [
        ("r_residue_form", [0, 0, 3, 0]),
        ("s_residue_form", [0, 3, 0, 0]),
        ("t_residue_form", [-3, 0, 0, 3]),
    ];
    for ((label, u), e) in forms.into_iter().zip(&basis.elements) {
        checks.push(Check::equal(
            label,
            ring.mat_display(e),
            ring.mat_display(&residue_form(&ring, u)),
            Provenance::Stated,
        ));
    }

    let from_rel = action_from_relations();
    let from_conj = match action_from_conjugation() {
        Ok(a) => a,
        Err(e) => {
            checks.push(Check::error("action_from_conjugation", e));
            return VerificationReport::new(name, checks);
        }
    };
    for (label, (x, y)) in ["action_s", "action_t", "action_j"]
        .into_iter()
        .zip(from_conj.iter().zip(&from_rel))
    {
        let mut check = Check::equal(label, x, y, Provenance::Stated);
        if !check.passed {
            check.witness = Some(column_differences(x, y));
        }
        checks.push(check);
    }
    let singular = from_conj.iter().find(|m| m.det() == 0);
    checks.push(Check::holds(
        "actions_invertible",
        singular.is_none(),
        Provenance::Derived,
        || format!("{} is singular", singular.unwrap()),
    ));

    let all = subspaces();
    checks.push(Check::equal(
        "subspace_count",
        all.len(),
        64,
        Provenance::Derived,
    ));
    for (label, actions) in [
        ("invariant_subspace_dims", &from_conj),
        ("invariant_subspace_dims_from_relations", &from_rel),
    ] {
        let inv = invariant_subspaces(actions);
        let dims: Vec<u32> = inv.iter().map(Subspace::dim).collect();
        let mut check = Check::equal(label, format!("{dims:?}"), "[0, 3]", Provenance::Stated);
        if !check.passed {
            check.witness = Some(
                inv.iter()
                    .filter(|s| !matches!(s.dim(), 0 | 3))
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            );
        }
        checks.push(check);
    }
    VerificationReport::new(name, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_by_dimension() {
        let mut by_dim = [0; 4];
        for s in subspaces() {
            by_dim[s.dim() as usize] += 1;
        }
        assert_eq!(by_dim, [1, 31, 31, 1]);
    }

    #[test]
    fn relation_actions_are_invertible() {
        assert!(action_from_relations().iter().all(|m| m.det() != 0));
    }

    #[test]
    fn identity_action_keeps_every_subspace() {
        let id = ActionMatrix::from_columns([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(invariant_subspaces(&[id]).len(), 64);
    }

    #[test]
    fn conjugation_action_of_t_on_r() {
        // T(I + τU)T⁻¹ = I + τ·TUT⁻¹ with U = [[0,0],[3,0]] gives
        // [[3λ, −3λ²], [3, −3λ]]; with λ ≡ −2 mod τ that is U_r + U_s + 2U_t.
        let t = action_from_conjugation().unwrap()[1];
        assert_eq!([t.0[0][0], t.0[1][0], t.0[2][0]], [1, 1, 2]);
    }

    #[test]
    fn lemma_b_report() {
        let r = verify_lemma_b();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["action_t"], "{r}");
        assert_eq!(
            r.check("action_t").unwrap().witness.as_deref(),
            Some("image of r: conjugation gives r·s·t^2, relations give r·s^4·t^2")
        );
    }
}
