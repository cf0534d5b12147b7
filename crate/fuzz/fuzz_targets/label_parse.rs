#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::label::Indecomposable;

fuzz_target!(|data: &[u8]| {
    if data.len() > 128 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else { return };
    for p in 2..=4 {
        if let Ok(k) = Indecomposable::parse(s, p) {
            assert_eq!(Indecomposable::parse(&k.to_string(), p).unwrap(), k);
        }
    }
});
