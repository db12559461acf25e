#![no_main]

use gbundle::{FgAbelianGroup, Notation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = text.parse::<FgAbelianGroup>() {
        for notation in [Notation::Unicode, Notation::Ascii] {
            assert_eq!(g.render(notation).parse::<FgAbelianGroup>().unwrap(), g);
        }
    }
    // The JSON form is a second decoder for the same type.
    if let Ok(g) = serde_json::from_str::<FgAbelianGroup>(text) {
        let back = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&back).unwrap(), g);
    }
});
