#![no_main]

use libfuzzer_sys::fuzz_target;
use toughcycle::codec::GraphStream;

fuzz_target!(|data: &[u8]| {
    let stream = GraphStream::new(data, None).with_max_vertices(256);
    let mut last_line = 0;
    for rec in stream {
        match rec {
            Ok(rec) => {
                let line = rec.source_line.unwrap();
                assert!(line > last_line);
                last_line = line;
            }
            Err(_) => break,
        }
    }
});
