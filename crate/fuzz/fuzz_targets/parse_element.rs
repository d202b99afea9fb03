#![no_main]

use hecke5::parse::parse_element;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_element(s) {
        // canonical output re-parses to the same value
        assert_eq!(parse_element(&x.to_string()).unwrap(), x);
        let _ = x.norm();
    }
});
