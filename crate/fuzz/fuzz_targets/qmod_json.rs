#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::modules::QMod;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = QMod::from_json(s) {
        if m.dim() <= 16 {
            let _ = m.verify();
        }
    }
});
