#![no_main]

use libfuzzer_sys::fuzz_target;
use splitjac::nielsen::OrbitTable;

fuzz_target!(|data: &str| {
    let _ = OrbitTable::from_json(data);
});
