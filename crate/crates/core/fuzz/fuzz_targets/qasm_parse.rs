#![no_main]

use latoffoli::qasm::{from_qasm, to_qasm};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(circuit) = from_qasm(text) {
        let emitted = to_qasm(&circuit);
        let reparsed = from_qasm(&emitted).expect("emitted qasm parses");
        assert_eq!(reparsed, circuit);
        let _ = circuit.expand_macros().depth();
    }
});
