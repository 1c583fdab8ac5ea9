#![no_main]

use libfuzzer_sys::fuzz_target;
use misodof::numerics::Mode;
use misodof_cli::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = RunConfig::from_json(s) {
        let _ = cfg.validate(Mode::Exact);
        let _ = cfg.validate(Mode::Float);
    }
});
