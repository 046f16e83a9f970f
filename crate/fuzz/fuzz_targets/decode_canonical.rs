#![no_main]

use gwloc::graph::{canonical_form, decode_canonical};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = decode_canonical(data) {
        assert_eq!(canonical_form(&g), data);
    }
});
