#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    let n = 3 + u32::from(n % 16);
    if let Ok(p) = gwloc_cli::parse_insertion(s, n) {
        assert!(p.mu1() >= p.mu2() && p.mu1() <= n - 2);
        let again = gwloc_cli::parse_insertion(&format!("{},{}", p.mu1(), p.mu2()), n).unwrap();
        assert_eq!(again, p);
    }
});
