#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::dof_lab::{parse_rational, region_check};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let parts: Vec<&str> = s.split_whitespace().collect();
    let [a, b, c] = parts[..] else { return };
    if let (Ok(a), Ok(b), Ok(c)) = (parse_rational(a), parse_rational(b), parse_rational(c)) {
        let _ = region_check(a, b, c);
    }
});
