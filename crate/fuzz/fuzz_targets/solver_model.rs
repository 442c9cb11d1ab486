#![no_main]

use e2pm::cnf::{decode, parse_model};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(model) = parse_model(s) {
        for n in 1..=5 {
            if let Ok(t) = decode(&model, n) {
                assert_eq!(t.order(), n);
            }
        }
    }
});
