#![no_main]
use libfuzzer_sys::fuzz_target;

use newton_core::parse::{parse_polynomial, MAX_DEGREE};

fuzz_target!(|text: &str| {
    if let Ok(p) = parse_polynomial(text) {
        assert!(p.degree() <= MAX_DEGREE);
    }
});
