#![no_main]

use libfuzzer_sys::fuzz_target;
use steiner_core::io::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(instance) = parse_instance(text) {
            // Whatever parses must survive a write/parse round trip.
            let again = parse_instance(&write_instance(&instance)).expect("written instance parses");
            assert_eq!(again.graph.n(), instance.graph.n());
            assert_eq!(again.graph.edges(), instance.graph.edges());
            assert_eq!(again.terminals, instance.terminals);
            assert_eq!(again.extras, instance.extras);
        }
    }
});
