#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::decoding::{decode_report, zf_report};
use misodof::numerics::{Exact, Float};
use misodof::scheme_core::Transcript;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(tr) = Transcript::<Exact>::from_json(s) {
        let _ = decode_report(&tr);
    }
    if let Ok(tr) = Transcript::<Float>::from_json(s) {
        let _ = zf_report(&tr, 1e4);
    }
});
