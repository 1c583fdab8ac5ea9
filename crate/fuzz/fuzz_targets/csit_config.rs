#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::channel::CsitConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<CsitConfig>() {
        assert_eq!(c.to_string().parse::<CsitConfig>().unwrap(), c);
    }
});
