#![no_main]

use libfuzzer_sys::fuzz_target;
use tgain::angle::GainAngle;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = text.parse::<GainAngle>() {
        assert!(a.den() > 0 && (0..2 * a.den()).contains(&a.num()));
        let back: GainAngle = a.to_string().parse().expect("display form must parse");
        assert_eq!(back, a);
        assert_eq!(-(-a), a);
        let _ = a.checked_add(-a).map(|z| assert!(z.is_one()));
    }
});
