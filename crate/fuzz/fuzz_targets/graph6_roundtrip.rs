#![no_main]

use libfuzzer_sys::fuzz_target;
use toughcycle::codec::{encode_graph6, parse_graph6};
use toughcycle::Graph;

fuzz_target!(|data: &[u8]| {
    let Some((&n, bits)) = data.split_first() else { return };
    let n = usize::from(n % 80);
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits.get(k / 8).is_some_and(|b| b >> (k % 8) & 1 == 1) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    let s = encode_graph6(&g).unwrap();
    assert_eq!(parse_graph6(&s).unwrap(), g);
});
