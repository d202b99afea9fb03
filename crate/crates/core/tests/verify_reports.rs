use hecke5::verify::{verify_all, verify_lemma_a, verify_paper_identities, verify_section7};

#[test]
fn lemma_a_on_all_small_cases() {
    for p in [2, 3, 5, 7] {
        for n in [1, 2] {
            let r = verify_lemma_a(p, n);
            assert!(r.passed, "{r}");
        }
    }
}

#[test]
fn section7_and_identities_pass() {
    let r = verify_section7();
    assert!(r.passed, "{r}");
    let r = verify_paper_identities();
    assert!(r.passed, "{r}");
}

#[test]
fn verify_all_is_sorted_and_complete() {
    let reports = verify_all();
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 8);
    // every failing check carries a witness
    for r in &reports {
        for c in &r.checks {
            assert_eq!(c.passed, c.witness.is_none(), "{}: {}", r.name, c.name);
        }
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(failed, ["lemma_b"]);
}
