#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::cyclotomic::CycNum;

fuzz_target!(|data: &[u8]| {
    if data.len() > 256 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else { return };
    for order in [4, 6, 8] {
        let _ = CycNum::parse_expr(s, order);
    }
});
