#![no_main]

use latoffoli::CouplingLayout;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(layout) = CouplingLayout::from_json(text) {
        let again = CouplingLayout::from_json(&layout.to_json()).expect("emitted layout parses");
        assert_eq!(again, layout);
        if layout.num_qubits() <= 64 {
            let _ = latoffoli::classify(&layout, 3);
        }
    }
});
