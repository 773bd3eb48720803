#![no_main]
use formal_spectral::laurent::json::{parse_series_json, series_to_json_string};
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;
use num_rational::BigRational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = parse_series_json::<BigRational>(text) {
        let out = series_to_json_string(&s);
        let again = parse_series_json::<BigRational>(&out).expect("round trip");
        assert_eq!(out, series_to_json_string(&again));
    }
    if let Ok(s) = parse_series_json::<Complex64>(text) {
        let out = series_to_json_string(&s);
        let again = parse_series_json::<Complex64>(&out).expect("round trip");
        assert_eq!(out, series_to_json_string(&again));
    }
});
