#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::humbert::{parse_gaussian, parse_tau};

fuzz_target!(|data: &str| {
    if data.len() > 256 {
        return;
    }
    let _ = parse_gaussian(data);
    let _ = parse_tau(data);
});
