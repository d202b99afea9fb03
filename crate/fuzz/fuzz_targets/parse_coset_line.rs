#![no_main]

use hecke5::parse::parse_coset_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((w, m)) = parse_coset_line(s) {
        let line = format!("{w}\t{m}");
        assert_eq!(parse_coset_line(&line).unwrap(), (w, m));
    }
});
