#![no_main]

use beststop_cli::cache::TriangleEntry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // corrupt entries must come back as errors, never panics
    if let Ok(e) = TriangleEntry::parse(s) {
        let _ = e.to_triangle();
    }
});
