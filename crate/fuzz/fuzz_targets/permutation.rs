#![no_main]

use beststop::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Permutation>() {
        // accepted literals print back to an equal permutation
        let back: Permutation = p.to_string().parse().expect("display reparses");
        assert_eq!(back, p);
        let _ = p.ltr_maxima();
        let _ = p.value_saturated_count();
    }
});
