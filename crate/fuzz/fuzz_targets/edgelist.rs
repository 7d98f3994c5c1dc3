#![no_main]

use libfuzzer_sys::fuzz_target;
use toughcycle::codec::{encode_edgelist, parse_edgelist};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_edgelist(text) {
        assert_eq!(parse_edgelist(&encode_edgelist(&g)).unwrap(), g);
    }
});
