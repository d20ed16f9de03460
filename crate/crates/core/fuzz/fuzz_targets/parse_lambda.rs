#![no_main]
use libfuzzer_sys::fuzz_target;

use newton_core::parse::parse_lambda;

fuzz_target!(|text: &str| {
    if let Ok(z) = parse_lambda(text) {
        assert!(z.re.is_finite() && z.im.is_finite());
        assert!(z.re != 0.0 || z.im != 0.0);
    }
});
