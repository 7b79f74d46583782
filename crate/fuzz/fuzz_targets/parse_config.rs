#![no_main]

use libfuzzer_sys::fuzz_target;
use pointwise::config::parse_config;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Anything accepted must also pass validation on its own.
        if let Ok(config) = parse_config(text) {
            config.validate().expect("parsed config validates");
        }
    }
});
