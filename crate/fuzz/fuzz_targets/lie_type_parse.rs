#![no_main]

use fusion_ideal::lie_core::LieType;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<LieType>() {
        // accepted names print back to something that parses to the same type
        assert_eq!(t.to_string().parse::<LieType>().ok(), Some(t));
    }
});
