#![no_main]
use formal_spectral::fixture::{parse_sidecar_json, Fixture};
use formal_spectral::ring::json::MatrixValue;
use formal_spectral::spectral::SpectralFn;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sidecar) = parse_sidecar_json(text) else {
        return;
    };
    let Ok(v) = MatrixValue::try_from(sidecar.v.clone()) else {
        return;
    };
    // V itself stands in for the matrix; only the shapes have to agree
    let Ok(fx) = Fixture::from_parts(v.to_complex(), &sidecar) else {
        return;
    };
    let _ = fx.expected(SpectralFn::Sgn);
    let back = fx.sidecar().expect("finite sidecar serializes");
    assert_eq!(back.eigenvalues, sidecar.eigenvalues);
});
