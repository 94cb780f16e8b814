#![no_main]

use latoffoli::{Placement, Preset};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(placement) = text.parse::<Placement>() {
        for preset in Preset::ALL {
            let _ = placement.validate(&preset.layout());
        }
    }
});
