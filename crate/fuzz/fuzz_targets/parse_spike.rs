#![no_main]

use libfuzzer_sys::fuzz_target;

use spikelab::io::parse_spike;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_spike(text, 31) {
        let arms = doc.arms.expect("spike files carry arms");
        assert_eq!(arms.union(), doc.matroid.ground());
        assert!(doc.t.unwrap_or(0) >= 1);
        let pairs = arms.canonical_pairs();
        assert!(pairs.windows(2).all(|w| w[0][0] < w[1][0]));
    }
});
