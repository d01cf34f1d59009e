#![no_main]

use libfuzzer_sys::fuzz_target;

use hochsim::algebra::amalgam_algebra;
use hochsim::coeff::Ring;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cat) = hochsim::input::parse_amalgam(text) {
        // composition endpoints line up
        for a in 0..cat.morphism_count() {
            for b in 0..cat.morphism_count() {
                let composable = cat.morphism(a).cod == cat.morphism(b).dom;
                assert_eq!(cat.compose(a, b).is_some(), composable);
            }
        }
        // small categories: the algebra constructor re-validates everything
        if cat.morphism_count() <= 24 {
            let _ = amalgam_algebra(&cat, Ring::Integers);
        }
    }
});
