#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::kronecker::QuiverRep;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = QuiverRep::from_json(s) {
        let back = serde_json::to_string(&r).unwrap();
        assert_eq!(QuiverRep::from_json(&back).unwrap(), r);
    }
});
