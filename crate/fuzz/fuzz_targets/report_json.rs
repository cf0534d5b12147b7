#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::category::DecompReport;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for p in 2..=4 {
        let _ = DecompReport::from_json(s, p);
    }
});
