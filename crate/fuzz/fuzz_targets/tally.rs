#![no_main]

use beststop::Tally;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<Tally>() {
        let back: Tally = t.to_string().parse().expect("display reparses");
        assert_eq!(back, t);
        let _ = t.to_rational();
    }
});
