#![no_main]

use libfuzzer_sys::fuzz_target;
use subspace_ent::io::{parse_index_list, parse_params};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(map) = parse_params(text) {
        for value in map.values() {
            let _ = parse_index_list(value);
        }
    }
    let _ = parse_index_list(text);
});
