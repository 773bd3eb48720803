#![no_main]
use formal_spectral::ring::json::{matrix_to_json_string, parse_matrix_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = parse_matrix_json(text) else {
        return;
    };
    // anything accepted must survive a round trip unchanged
    let out = matrix_to_json_string(&m).expect("parsed matrix serializes");
    let again = parse_matrix_json(&out).expect("serialized matrix parses");
    assert_eq!(m, again);
});
