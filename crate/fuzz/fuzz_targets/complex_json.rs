#![no_main]

use gbundle::{classify, parse_group_spec, CwComplex2};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = CwComplex2::from_json(text) else { return };
    if m.validate().is_err() {
        assert!(m.boundary_matrices().is_err());
        return;
    }
    // Keep the homomorphism search small; the point is the structural path.
    if m.edges.len() > 12 || m.faces.len() > 12 {
        return;
    }
    let maps = m.boundary_matrices().expect("valid complex has boundaries");
    assert!((&maps.d1 * &maps.d2).is_zero());
    let round_trip = CwComplex2::from_json(&m.to_json()).expect("serialized complex parses");
    assert_eq!(round_trip, m);
    for g in ["U(1)", "SO(3) x Z/2"] {
        let _ = classify(&m, &parse_group_spec(g).unwrap());
    }
});
