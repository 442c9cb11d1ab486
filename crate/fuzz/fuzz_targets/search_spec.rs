#![no_main]

use e2pm::search::SearchSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = serde_json::from_slice::<SearchSpec>(data) else { return };
    if spec.validate().is_err() {
        return;
    }
    if spec.n <= 5 {
        let _ = e2pm::cnf::encode(&spec);
    }
    if spec.n <= 3 {
        let _ = e2pm::search::search(&spec.clone().with_limit(1));
    }
});
