#![no_main]

use libfuzzer_sys::fuzz_target;
use pointwise::data::parse_ball;

fuzz_target!(|data: &[u8]| {
    let _ = parse_ball(data);
});
