#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::algebra::AlgElem;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = AlgElem::from_json(s) {
        let back = serde_json::to_string(&x).unwrap();
        assert_eq!(AlgElem::from_json(&back).unwrap(), x);
    }
});
