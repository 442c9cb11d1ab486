#![no_main]

use e2pm::cnf::parse_dimacs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((vars, clauses)) = parse_dimacs(s) {
        for c in &clauses {
            assert!(c.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= vars));
        }
    }
});
