#![no_main]

use fusion_ideal::rep_ring::VirtualCharacter;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = VirtualCharacter::from_json(s) {
        let again = VirtualCharacter::from_json(&x.to_json()).expect("own output decodes");
        assert_eq!(again, x);
    }
});
