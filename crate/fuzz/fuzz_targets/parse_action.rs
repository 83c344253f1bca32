#![no_main]

use libfuzzer_sys::fuzz_target;
use rotor::json::{action_to_value, parse_action};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(rho) = parse_action(s) {
        let again = parse_action(&action_to_value(&rho).to_string()).expect("written action parses");
        assert_eq!(again, rho);
    }
});
