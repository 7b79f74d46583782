#![no_main]

use libfuzzer_sys::fuzz_target;
use pointwise::data::parse_or_null;

fuzz_target!(|data: &[u8]| {
    let _ = parse_or_null(data);
});
