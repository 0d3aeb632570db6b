#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::ramification::{validate_profile, RamificationProfile};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(p) = RamificationProfile::parse(usize::from(n % 32), s) {
        let _ = validate_profile(&p);
        let _ = p.to_string();
    }
});
