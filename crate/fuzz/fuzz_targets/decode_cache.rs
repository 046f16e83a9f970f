#![no_main]

use gwloc::gkm::Target;
use gwloc::graph::{decode_cache, encode_cache, CacheKey, Degree};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = decode_cache(data, None);
    let key = CacheKey {
        target: Target::Grassmannian,
        n: 4,
        degree: Degree::Total(1),
        m: 0,
    };
    if let Ok(graphs) = decode_cache(data, Some(&key)) {
        assert_eq!(encode_cache(&key, &graphs), data);
    }
});
