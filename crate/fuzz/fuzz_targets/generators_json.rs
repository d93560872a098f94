#![no_main]

use fusion_ideal::cli::parse_generators;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_generators(s);
    }
});
