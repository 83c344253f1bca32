#![no_main]

use libfuzzer_sys::fuzz_target;
use rotor::json::{map_to_value, parse_map};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_map(s) {
        let again = parse_map(&map_to_value(&f).to_string()).expect("written map parses");
        assert_eq!(again, f);
    }
});
