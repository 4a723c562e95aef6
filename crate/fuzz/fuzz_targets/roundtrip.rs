#![no_main]

use libfuzzer_sys::fuzz_target;

use spikelab::io::parse_document;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_document(text, 31) else {
        return;
    };
    // canonical output re-reads to the same value and is a fixed point
    let canon = doc.to_json();
    let again = parse_document(&canon, 31).expect("canonical output parses");
    assert_eq!(again, doc);
    assert_eq!(again.to_json(), canon);
});
