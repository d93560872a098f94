#![no_main]

use fusion_ideal::rep_ring::PolyChar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = PolyChar::from_json(s) {
        let again = PolyChar::from_json(&p.to_json()).expect("own output decodes");
        assert_eq!(again.terms(), p.terms());
    }
});
