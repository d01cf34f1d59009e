#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(poset) = hochsim::input::parse_poset(text) {
        // reflexive, antisymmetric, transitive
        let n = poset.size();
        for i in 0..n {
            assert!(poset.leq(i, i));
            for j in 0..n {
                if i != j {
                    assert!(!(poset.leq(i, j) && poset.leq(j, i)));
                }
                for k in 0..n {
                    if poset.leq(i, j) && poset.leq(j, k) {
                        assert!(poset.leq(i, k));
                    }
                }
            }
        }
    }
});
