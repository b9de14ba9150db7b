//! Fuzz target for family document parsing.
//!
//! Arbitrary bytes must never panic: parse and validation either succeed or
//! return an error, and accepted documents round-trip into families.

#![no_main]

use libfuzzer_sys::fuzz_target;
use setfam::doc::FamilyDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = FamilyDocument::parse(text) {
        let _ = doc.to_family();
    }
});
