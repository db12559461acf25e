#![no_main]

use gbundle::StandardSpace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(space) = text.parse::<StandardSpace>() {
        assert_eq!(space.to_string().parse::<StandardSpace>().unwrap(), space);
        // Builders are linear in the size; skip absurd ones.
        if matches!(space, StandardSpace::Orientable { genus: n } | StandardSpace::NonOrientable { crosscaps: n } | StandardSpace::Wedge { circles: n } if n > 64) {
            return;
        }
        space.build().unwrap().validate().unwrap();
    }
});
