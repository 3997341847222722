#![no_main]

use aidig::graph::Digraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for add_loops in [false, true] {
        if let Ok(h) = Digraph::parse(text, add_loops) {
            let reparsed = Digraph::parse(&h.serialize(true), false).unwrap();
            assert_eq!(h, reparsed);
        }
    }
});
