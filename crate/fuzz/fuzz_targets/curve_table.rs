#![no_main]

use lefschetz_core::constructions::{verify_constraints, CurveTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = CurveTable::from_json(text) {
        let _ = verify_constraints(&table);
    }
});
