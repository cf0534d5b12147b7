#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::cyclotomic::CycNum;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = CycNum::from_json(s) {
        let back = serde_json::to_string(&x).unwrap();
        assert_eq!(CycNum::from_json(&back).unwrap(), x);
    }
});
