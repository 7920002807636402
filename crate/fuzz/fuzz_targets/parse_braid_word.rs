#![no_main]

use lefschetz_core::braid::{Ambient, BraidWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let strands = usize::from(head % 12);
    let ambient = if head & 0x80 == 0 {
        Ambient::Planar
    } else {
        Ambient::Spherical
    };
    if let Ok(word) = BraidWord::parse(strands, ambient, text) {
        let _ = word.permutation();
        let _ = word.degree();
        let printed = if word.is_empty() {
            String::new()
        } else {
            word.to_string()
        };
        let again = BraidWord::parse(strands, ambient, &printed).expect("printed words parse");
        assert_eq!(again.letters(), word.letters());
    }
});
