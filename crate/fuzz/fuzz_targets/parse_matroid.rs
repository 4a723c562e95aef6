#![no_main]

use libfuzzer_sys::fuzz_target;

use spikelab::io::parse_matroid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matroid(text, 31) {
        // accepted input is canonical: sorted antichain inside the ground set
        let c = m.circuits();
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(c.iter().all(|x| !x.is_empty() && x.is_subset(m.ground())));
        for (i, a) in c.iter().enumerate() {
            assert!(c[i + 1..]
                .iter()
                .all(|b| !a.is_subset(*b) && !b.is_subset(*a)));
        }
    }
});
