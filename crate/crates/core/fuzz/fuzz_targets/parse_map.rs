#![no_main]
use libfuzzer_sys::fuzz_target;

use newton_core::parse::parse_rational_map;

fuzz_target!(|text: &str| {
    if let Ok(r) = parse_rational_map(text) {
        // a parsed map is reduced with a monic, nonzero denominator
        assert!(!r.den().is_zero());
        assert!(r
            .num()
            .coeffs()
            .iter()
            .chain(r.den().coeffs())
            .all(|c| c.re.is_finite() && c.im.is_finite()));
    }
});
