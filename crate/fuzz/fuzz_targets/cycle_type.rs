#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::nielsen::CycleType;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    let n = usize::from(n % 16);
    if let Ok(t) = CycleType::parse(s, n) {
        assert_eq!(t.parts().iter().map(|&p| p as usize).sum::<usize>(), n);
    }
});
