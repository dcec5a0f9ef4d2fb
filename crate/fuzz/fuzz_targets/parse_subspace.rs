#![no_main]

use libfuzzer_sys::fuzz_target;
use subspace_ent::io::{format_subspace, parse_subspace_with_limit};

const MAX_DIM: usize = 4096;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_subspace_with_limit(text, MAX_DIM) {
        let again = parse_subspace_with_limit(&format_subspace(&v), MAX_DIM).expect("formatted subspace reparses");
        assert_eq!(again.dim(), v.dim());
    }
});
