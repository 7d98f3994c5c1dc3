#![no_main]

use libfuzzer_sys::fuzz_target;
use toughcycle::codec::{encode_graph6, parse_graph6_bytes};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_graph6_bytes(data, 256) {
        // Accepted input is canonical: re-encoding reproduces the body.
        let again = encode_graph6(&g).unwrap();
        assert_eq!(parse_graph6_bytes(again.as_bytes(), 256).unwrap(), g);
    }
});
