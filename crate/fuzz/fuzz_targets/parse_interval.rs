#![no_main]

use libfuzzer_sys::fuzz_target;
use pointwise::data::parse_interval;

fuzz_target!(|data: &[u8]| {
    let _ = parse_interval(data);
});
