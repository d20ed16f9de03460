#![no_main]
use libfuzzer_sys::fuzz_target;

use newton_core::parse::parse_preset;

fuzz_target!(|text: &str| {
    if let Ok(p) = parse_preset(text) {
        // Display must parse back to the same preset
        assert_eq!(parse_preset(&p.to_string()).ok(), Some(p));
        let _ = p.newton_map();
    }
});
