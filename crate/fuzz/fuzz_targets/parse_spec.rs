#![no_main]

use lefschetz_core::model::parse_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_spec(text) {
        let doc = spec.to_document();
        let again = parse_spec(&doc).expect("own documents parse");
        assert_eq!(again, spec);
        assert_eq!(again.to_document(), doc);
    }
});
