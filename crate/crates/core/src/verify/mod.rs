//! Finite verifications of the lemmas and matrix identities behind the
//! index formula.
//!
//! Every check compares a computed value against an expected one and keeps
//! a witness when it fails. Nothing here claims to prove an infinite
//! statement; the checks establish the finite facts such proofs consume.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

mod identities;
mod lemma_a;
mod lemma_b;
mod section7;

pub use identities::verify_paper_identities;
pub use lemma_a::{lemma_a_generators, verify_lemma_a};
pub use lemma_b::{
    action_from_conjugation, action_from_relations, invariant_subspaces, subspaces, verify_lemma_b,
    ActionMatrix, Subspace,
};
pub use section7::{delta, verify_section7};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A value stated in the literature the library implements.
    Stated,
    /// A value computed independently of the code under test.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Stated => "stated",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    /// Counterexample, present exactly when the check failed.
    pub witness: Option<String>,
}

impl Check {
    /// Passes iff `computed == expected` as displayed strings.
    pub fn equal(
        name: impl Into<String>,
        computed: impl fmt::Display,
        expected: impl fmt::Display,
        provenance: Provenance,
    ) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        let passed = computed == expected;
        let witness = (!passed).then(|| format!("got {computed}, want {expected}"));
        Check {
            name: name.into(),
            passed,
            computed,
            expected,
            provenance,
            witness,
        }
    }

    /// A boolean property; `witness` is consulted only on failure.
    pub fn holds(
        name: impl Into<String>,
        ok: bool,
        provenance: Provenance,
        witness: impl FnOnce() -> String,
    ) -> Self {
        Check {
            name: name.into(),
            passed: ok,
            computed: ok.to_string(),
            expected: "true".into(),
            provenance,
            witness: (!ok).then(witness),
        }
    }

    /// A check that could not be carried out.
    pub fn error(name: impl Into<String>, err: impl fmt::Display) -> Self {
        Check {
            name: name.into(),
            passed: false,
            computed: "error".into(),
            expected: "a value".into(),
            provenance: Provenance::Derived,
            witness: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Self {
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        VerificationReport {
            name: name.into(),
            passed,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {}", self.name)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {}: {}", c.name, c.computed)?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The `(p, n)` pairs checked by [`verify_all`].
pub const LEMMA_A_CASES: [(u64, u32); 5] = [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1)];

/// Runs every verification in parallel; reports are sorted by name.
pub fn verify_all() -> Vec<VerificationReport> {
    type Job = Box<dyn Fn() -> VerificationReport + Send + Sync>;
    let mut jobs: Vec<Job> = vec![
        Box::new(verify_lemma_b),
        Box::new(verify_section7),
        Box::new(verify_paper_identities),
    ];
    for (p, n) in LEMMA_A_CASES {
        jobs.push(Box::new(move || verify_lemma_a(p, n)));
    }
    let mut reports: Vec<VerificationReport> = jobs.par_iter().map(|job| job()).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}
