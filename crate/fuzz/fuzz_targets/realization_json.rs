#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::channel::ChannelRealization;
use misodof::numerics::{Exact, Float};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = ChannelRealization::<Exact>::from_json(s) {
        let back = ChannelRealization::<Exact>::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back.to_fixture(), r.to_fixture());
    }
    let _ = ChannelRealization::<Float>::from_json(s);
});
