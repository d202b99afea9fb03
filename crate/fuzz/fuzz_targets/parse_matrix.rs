#![no_main]

use hecke5::hecke::is_member;
use hecke5::parse::parse_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(s) {
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        // bounded entries keep the membership test cheap
        if s.len() < 64 {
            let _ = is_member(&m);
        }
    }
});
