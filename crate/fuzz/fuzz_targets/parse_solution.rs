#![no_main]

use libfuzzer_sys::fuzz_target;
use steiner_core::io::parse_solution;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(ids) = parse_solution(text) {
            assert!(ids.windows(2).all(|w| w[0] <= w[1]));
        }
    }
});
