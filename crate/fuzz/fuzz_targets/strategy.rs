#![no_main]

use beststop::strategy::Strategy;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(st) = s.parse::<Strategy>() {
        let back: Strategy = st.to_string().parse().expect("display reparses");
        assert_eq!(back, st);
    }
});
