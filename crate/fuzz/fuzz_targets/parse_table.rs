#![no_main]

use libfuzzer_sys::fuzz_target;
use rotor::json::{parse_table, table_to_value};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_table(s) {
        assert_eq!(parse_table(&table_to_value(&t).to_string()).unwrap(), t);
    }
});
