#![no_main]

use libfuzzer_sys::fuzz_target;
use steiner_core::io::parse_layout;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_layout(text);
    }
});
