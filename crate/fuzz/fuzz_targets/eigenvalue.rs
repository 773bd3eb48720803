#![no_main]
use formal_spectral::fixture::parse_eigenvalue;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = parse_eigenvalue(text) {
        assert!(l.re.is_finite() && l.im.is_finite());
        // the canonical a+bi spelling parses back to the same value
        let again = parse_eigenvalue(&format!("{:?}{:+?}i", l.re, l.im)).expect("canonical form parses");
        assert_eq!(l, again);
    }
});
