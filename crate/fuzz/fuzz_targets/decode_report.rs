#![no_main]

use lefschetz_core::report::decode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = decode(text) {
        let encoded = report.encode();
        assert_eq!(decode(&encoded).expect("own encoding decodes"), report);
        let _ = report.render_text();
    }
});
