#![no_main]

use hecke5::parse::parse_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_word(s) {
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        if w.len() <= 64 {
            let m = w.eval();
            assert!(m.det().is_one());
        }
    }
});
