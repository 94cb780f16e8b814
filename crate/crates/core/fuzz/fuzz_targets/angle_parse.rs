#![no_main]

use latoffoli::Angle;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(angle) = text.parse::<Angle>() {
        assert_eq!(angle.to_string().parse::<Angle>(), Ok(angle));
        assert!((angle + -angle).is_zero());
    }
});
