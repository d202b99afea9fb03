//! The structure of H₅/H(5) and its fifth-power subgroup.

use crate::hecke::{is_member, Mat2};
use crate::ideal::IdealHNF;
use crate::quotient::{build_quotient, power_subgroup, subgroup_generated, DEFAULT_CAP};
use crate::residue::ResidueRing;
use crate::ring::RingElt;

use super::{Check, Provenance, VerificationReport};

/// The generator of the prime above 5.
pub(crate) fn tau() -> RingElt {
    RingElt::new(2, 1)
}

/// `[a, b, c]` with `a = T⁻²·[[3λ+2, −2λ−3], [4λ+3, −4λ−2]]`, `b = SaS⁻¹`,
/// `c = JaJ⁻¹`; all three lie in H(2+λ).
pub fn delta() -> [Mat2; 3] {
    let m = Mat2::from_coords([(2, 3), (-3, -2), (3, 4), (-2, -4)]);
    let a = &Mat2::t_pow(-2) * &m;
    let b = a.conjugate_by(&Mat2::s());
    let c = a.conjugate_by(&Mat2::j());
    [a, b, c]
}

pub fn verify_section7() -> VerificationReport {
    let name = "section7";
    let five = IdealHNF::from_int(5).expect("(5) is nonzero");
    let q = match build_quotient(&five, DEFAULT_CAP) {
        Ok(q) => q,
        Err(e) => return VerificationReport::new(name, vec![Check::error("quotient_mod_5", e)]),
    };
    let ring = *q.ring();
    let mut checks = vec![Check::equal(
        "quotient_order",
        q.order(),
        15000,
        Provenance::Stated,
    )];

    let d = delta();
    let non_members: Vec<String> = d
        .iter()
        .filter(|m| !is_member(m))
        .map(|m| m.to_string())
        .collect();
    checks.push(Check::holds(
        "delta_in_h5",
        non_members.is_empty(),
        Provenance::Stated,
        || non_members.join(", "),
    ));

    let tau_ring = ResidueRing::new(IdealHNF::from_generator(&tau()).expect("nonzero"));
    let tau_id = tau_ring.mat_identity();
    let off: Vec<String> = d
        .iter()
        .filter(|m| tau_ring.mat_reduce(m) != tau_id)
        .map(|m| m.to_string())
        .collect();
    checks.push(Check::holds(
        "delta_congruent_to_identity_mod_tau",
        off.is_empty(),
        Provenance::Stated,
        || off.join(", "),
    ));

    let gens: Vec<_> = d.iter().map(|m| ring.mat_reduce(m)).collect();
    let delta_group = match subgroup_generated(&q, &gens) {
        Ok(h) => h,
        Err(e) => {
            checks.push(Check::error("delta_subgroup", e));
            return VerificationReport::new(name, checks);
        }
    };
    checks.push(Check::equal(
        "delta_order",
        delta_group.order(),
        125,
        Provenance::Stated,
    ));
    let nc = delta_group.group.non_commuting(&gens);
    let ew = delta_group.group.exponent_witness(5);
    checks.push(Check::holds(
        "delta_elementary_abelian",
        nc.is_none() && ew.is_none(),
        Provenance::Stated,
        || match (nc, ew) {
            (Some((g, x)), _) => format!(
                "{} and {} do not commute",
                ring.mat_display(&g),
                ring.mat_display(&x)
            ),
            (_, Some(g)) => format!("{}^5 ≠ I", ring.mat_display(&g)),
            _ => unreachable!(),
        },
    ));
    let conj = [
        (q.s_bar(), ring.mat_inv(&q.s_bar())),
        (q.t_bar(), ring.mat_inv(&q.t_bar())),
    ];
    checks.push(Check::holds(
        "delta_normal",
        delta_group.group.is_invariant_under(&conj),
        Provenance::Stated,
        || "not invariant under conjugation by S or T".into(),
    ));

    // ⟨Δ⟩ should be all of H(τ)/H(5)
    let kernel = q
        .group()
        .iter()
        .filter(|m| tau_ring.mat_reduce(&ring.mat_lift(m)) == tau_id)
        .count();
    checks.push(Check::equal(
        "kernel_mod_tau_order",
        kernel,
        delta_group.order(),
        Provenance::Derived,
    ));
    checks.push(Check::equal(
        "quotient_by_delta_order",
        q.order() / delta_group.order(),
        120,
        Provenance::Stated,
    ));

    let fifth = power_subgroup(&q, 5);
    checks.push(Check::equal(
        "fifth_power_index",
        q.order() / fifth.order(),
        1,
        Provenance::Derived,
    ));
    let t5 = ring.mat_pow(&q.t_bar(), 5);
    checks.push(Check::holds(
        "s_and_t5_in_fifth_powers",
        fifth.contains(&q.s_bar()) && fifth.contains(&t5),
        Provenance::Stated,
        || "S or T^5 missing from the fifth-power subgroup".into(),
    ));
    VerificationReport::new(name, checks)
}
