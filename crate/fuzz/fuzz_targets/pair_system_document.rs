//! Fuzz target for pair-system document parsing.
//!
//! Arbitrary bytes must never panic: parse and validation either succeed or
//! return an error, and accepted systems tolerate the condition checks.

#![no_main]

use libfuzzer_sys::fuzz_target;
use setfam::bollobas::check_conditions;
use setfam::doc::PairSystemDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = PairSystemDocument::parse(text) {
        if let Ok(system) = doc.to_system() {
            let _ = check_conditions(&system);
        }
    }
});
