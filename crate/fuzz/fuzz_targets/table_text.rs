#![no_main]

use e2pm::corpus::{load_text, save_table};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = load_text(s) {
        let saved = save_table(&doc.table, doc.z1, doc.z2);
        let again = load_text(&saved).expect("canonical text reloads");
        assert_eq!(again, doc);
        let _ = e2pm::validate_e2pm(doc.table, doc.z1, doc.z2);
    }
});
