#![no_main]
use libfuzzer_sys::fuzz_target;

use newton_core::parse::{format_map, format_polynomial, parse_polynomial, parse_rational_map};

fuzz_target!(|text: &str| {
    // the coefficient-list form is exact
    if let Ok(p) = parse_polynomial(text) {
        let back = parse_polynomial(&format_polynomial(&p)).expect("canonical form parses");
        assert_eq!(back.coeffs(), p.coeffs());
    }
    if let Ok(r) = parse_rational_map(text) {
        let again = parse_rational_map(&format_map(&r));
        assert!(
            again.is_ok(),
            "canonical form of {text:?} failed: {again:?}"
        );
    }
});
