use hecke5::hecke::{Mat2, Word};
use hecke5::ideal::IdealHNF;
use hecke5::parse::{parse_coset_line, parse_element, parse_hnf, parse_matrix, parse_word};
use hecke5::ring::RingElt;
use hecke5::Error;
use proptest::prelude::*;

type Check = fn(&str);

/// Same properties as the fuzz targets, so they also run on stable.
fn check_element(s: &str) {
    if let Ok(x) = parse_element(s) {
        assert_eq!(parse_element(&x.to_string()).unwrap(), x, "{s:?}");
    }
}

fn check_matrix(s: &str) {
    if let Ok(m) = parse_matrix(s) {
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m, "{s:?}");
    }
}

fn check_word(s: &str) {
    if let Ok(w) = parse_word(s) {
        assert_eq!(parse_word(&w.to_string()).unwrap(), w, "{s:?}");
    }
}

fn check_hnf(s: &str) {
    if let Ok(i) = parse_hnf(s) {
        assert!(0 <= i.k && i.k < i.d2);
        assert_eq!(IdealHNF::from_triple(i.d1, i.k, i.d2).unwrap(), i);
    }
}

fn check_coset_line(s: &str) {
    if let Ok((w, m)) = parse_coset_line(s) {
        assert_eq!(parse_coset_line(&format!("{w}\t{m}")).unwrap(), (w, m));
    }
}

fn error_position(r: Result<impl std::fmt::Debug, Error>) -> Option<usize> {
    match r {
        Err(Error::Parse { pos, .. }) => Some(pos),
        _ => None,
    }
}

#[test]
fn fuzz_corpus_seeds() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let targets: [(&str, Check); 5] = [
        ("parse_element", check_element),
        ("parse_matrix", check_matrix),
        ("parse_word", check_word),
        ("parse_hnf", check_hnf),
        ("parse_coset_line", check_coset_line),
    ];
    for (name, check) in targets {
        let dir = root.join(name);
        let mut n = 0;
        for entry in std::fs::read_dir(&dir).unwrap() {
            let bytes = std::fs::read(entry.unwrap().path()).unwrap();
            if let Ok(s) = std::str::from_utf8(&bytes) {
                check(s);
            }
            n += 1;
        }
        assert!(n > 0, "no seeds in {}", dir.display());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn element_soup(s in "[0-9L+\\-* ]{0,16}") {
        check_element(&s);
        if let Some(pos) = error_position(parse_element(&s)) {
            prop_assert!(pos <= s.chars().count());
        }
    }

    #[test]
    fn matrix_soup(s in "[\\[\\],0-9L+\\- ]{0,24}") {
        check_matrix(&s);
        if let Some(pos) = error_position(parse_matrix(&s)) {
            prop_assert!(pos <= s.chars().count());
        }
    }

    #[test]
    fn word_soup(s in "[STst x]{0,20}") {
        check_word(&s);
    }

    #[test]
    fn hnf_soup(s in "[0-9,\\- ]{0,14}") {
        check_hnf(&s);
    }

    #[test]
    fn coset_line_soup(w in "[STst]{0,6}", m in "[\\[\\],0-9L+\\-]{0,20}", tab in any::<bool>()) {
        let sep = if tab { "\t" } else { " " };
        check_coset_line(&format!("{w}{sep}{m}"));
    }

    #[test]
    fn printed_elements_reparse(a in any::<i64>(), b in any::<i64>()) {
        let x = RingElt::new(a, b);
        prop_assert_eq!(parse_element(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn printed_matrices_reparse(e in proptest::array::uniform4((-1000i64..1000, -1000i64..1000))) {
        let m = Mat2::from_coords(e);
        prop_assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn printed_words_reparse(s in "[STst]{0,30}") {
        let w: Word = parse_word(&s).unwrap();
        prop_assert_eq!(w.to_string(), s);
    }
}
