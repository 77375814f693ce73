#![no_main]

use libfuzzer_sys::fuzz_target;
use steiner_core::graph::Graph;
use steiner_core::io::parse_tree_decomposition;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(file) = parse_tree_decomposition(text) {
            if file.vertex_count <= 1 << 12 {
                let _ = file.decomposition.validate(&Graph::empty(file.vertex_count));
            }
        }
    }
});
