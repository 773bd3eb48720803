#![no_main]
use formal_spectral::halffree::json::{basis_to_json_string, parse_basis_json};
use libfuzzer_sys::fuzz_target;
use num_rational::BigRational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = parse_basis_json::<BigRational>(text) {
        let out = basis_to_json_string(&s);
        let again = parse_basis_json::<BigRational>(&out).expect("round trip");
        assert_eq!(out, basis_to_json_string(&again));
    }
});
