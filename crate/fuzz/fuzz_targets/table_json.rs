#![no_main]

use e2pm::corpus::{load_structured, save_structured};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = load_structured(s) {
        let again = load_structured(&save_structured(&doc)).expect("canonical document reloads");
        assert_eq!(again, doc);
    }
});
