#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::algebra::{parse_rational_list, Poly};
use splitjac::igusa::{igusa_invariants, GenusTwoCurve};

fuzz_target!(|data: &str| {
    if data.len() > 256 {
        return;
    }
    let Ok(coeffs) = parse_rational_list(data) else {
        return;
    };
    // curves that parse must have computable invariants
    if let Ok(curve) = GenusTwoCurve::new(Poly::new(coeffs)) {
        let _ = igusa_invariants(&curve);
    }
});
