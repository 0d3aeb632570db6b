#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::algebra::{parse_rational, render_rational};

fuzz_target!(|data: &str| {
    if data.len() > 256 {
        return;
    }
    if let Ok(r) = parse_rational(data) {
        assert_eq!(parse_rational(&render_rational(&r)).unwrap(), r);
    }
});
