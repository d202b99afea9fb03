#![no_main]

use hecke5::ideal::IdealHNF;
use hecke5::parse::parse_hnf;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(i) = parse_hnf(s) {
        assert!(0 <= i.k && i.k < i.d2);
        assert_eq!(IdealHNF::from_triple(i.d1, i.k, i.d2).unwrap(), i);
        let _ = i.min_integer();
    }
});
