#![no_main]

use beststop::{PatternClass, Permutation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<PatternClass>() {
        let back: PatternClass = c.to_string().parse().expect("display reparses");
        assert_eq!(back, c);
        let _ = c.contains(&Permutation::identity(4));
    }
});
