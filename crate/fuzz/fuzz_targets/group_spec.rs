#![no_main]

use gbundle::parse_group_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_group_spec(text) {
        let again = parse_group_spec(&g.render()).expect("rendered name parses");
        assert!(again.same_homotopy_type(&g));
    }
});
