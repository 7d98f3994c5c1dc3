#![no_main]

use libfuzzer_sys::fuzz_target;
use toughcycle::codec::parse_sparse6_bytes;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_sparse6_bytes(data, 256) {
        assert!(g.edges().all(|(u, v)| u < v && v < g.order()));
    }
});
