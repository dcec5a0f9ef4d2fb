#![no_main]

use libfuzzer_sys::fuzz_target;
use subspace_ent::io::{format_state, parse_state_with_limit};

const MAX_DIM: usize = 4096;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(psi) = parse_state_with_limit(text, MAX_DIM) {
        let again = parse_state_with_limit(&format_state(&psi), MAX_DIM).expect("formatted state reparses");
        assert_eq!(again.shape(), psi.shape());
    }
});
