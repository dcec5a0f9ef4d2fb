#![no_main]

use libfuzzer_sys::fuzz_target;
use subspace_ent::criterion::Claim;
use subspace_ent::measures::MeasureSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(claim) = text.parse::<Claim>() {
        let _ = claim.measure();
    }
    let _ = text.parse::<MeasureSpec>();
});
