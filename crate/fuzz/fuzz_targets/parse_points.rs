#![no_main]

use libfuzzer_sys::fuzz_target;
use rotor::json::{parse_point_table, parse_points, points_to_value};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(pts) = parse_points(s) {
        assert_eq!(parse_points(&points_to_value(&pts).to_string()).unwrap(), pts);
    }
    let _ = parse_point_table(s);
});
