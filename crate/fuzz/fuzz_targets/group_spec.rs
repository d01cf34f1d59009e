#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(group) = hochsim::input::parse_group(text) {
        // anything the parser accepts must satisfy the group laws
        let e = group.identity();
        for g in 0..group.order() {
            assert_eq!(group.mul(g, group.inverse(g)), e);
            assert_eq!(group.mul(e, g), g);
        }
    }
});
