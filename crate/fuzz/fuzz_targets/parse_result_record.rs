#![no_main]

use gwloc_cli::parse_result_record;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_result_record(s) {
        let again = serde_json::to_string(&r).unwrap();
        assert_eq!(parse_result_record(&again).unwrap(), r);
    }
});
