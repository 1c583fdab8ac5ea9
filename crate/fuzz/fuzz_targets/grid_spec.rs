#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::dof_lab::{check_grid, parse_grid};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_grid(s) {
        let _ = check_grid(&g);
    }
});
