#![no_main]

use libfuzzer_sys::fuzz_target;
use uqslcat::braiding::Tensor2Repr;

fuzz_target!(|data: &[u8]| {
    let Ok(r) = serde_json::from_slice::<Tensor2Repr>(data) else { return };
    let _ = r.to_tensor();
});
