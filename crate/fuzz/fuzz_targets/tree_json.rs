#![no_main]

use beststop::tree::TreeDump;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = TreeDump::from_json(s) {
        let again = TreeDump::from_json(&d.to_json()).expect("reparses");
        assert_eq!(again, d);
    }
});
