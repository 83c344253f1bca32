//! Replays the checked-in fuzz seeds through the same round-trip properties
//! the fuzz targets assert, so they run on stable with the normal test suite.

use std::fs;
use std::path::PathBuf;

use rotor::circle::parse_rational;
use rotor::json::{
    action_to_value, map_to_value, parse_action, parse_map, parse_point_table, parse_points, parse_table,
    points_to_value, table_to_value,
};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned();
            (p.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn rational_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&s) {
            assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn map_seeds() {
    let mut parsed = 0;
    for (name, s) in seeds("parse_map") {
        match parse_map(&s) {
            Ok(f) => {
                assert_eq!(parse_map(&map_to_value(&f).to_string()).unwrap(), f, "{name}");
                parsed += 1;
            }
            Err(e) => assert!(!e.to_string().is_empty()),
        }
    }
    assert!(parsed > 0);
}

#[test]
fn action_seeds() {
    for (name, s) in seeds("parse_action") {
        if let Ok(rho) = parse_action(&s) {
            assert_eq!(parse_action(&action_to_value(&rho).to_string()).unwrap(), rho, "{name}");
        }
    }
}

#[test]
fn table_seeds() {
    for (name, s) in seeds("parse_table") {
        if let Ok(t) = parse_table(&s) {
            assert_eq!(parse_table(&table_to_value(&t).to_string()).unwrap(), t, "{name}");
        }
    }
}

#[test]
fn point_seeds() {
    for (name, s) in seeds("parse_points") {
        if let Ok(p) = parse_points(&s) {
            assert_eq!(parse_points(&points_to_value(&p).to_string()).unwrap(), p, "{name}");
        }
        let _ = parse_point_table(&s);
    }
}

fn round_trips(s: &str) {
    if let Ok(r) = parse_rational(s) {
        assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
    if let Ok(f) = parse_map(s) {
        assert_eq!(parse_map(&map_to_value(&f).to_string()).unwrap(), f);
    }
    if let Ok(rho) = parse_action(s) {
        assert_eq!(parse_action(&action_to_value(&rho).to_string()).unwrap(), rho);
    }
    if let Ok(t) = parse_table(s) {
        assert_eq!(parse_table(&table_to_value(&t).to_string()).unwrap(), t);
    }
    if let Ok(p) = parse_points(s) {
        assert_eq!(parse_points(&points_to_value(&p).to_string()).unwrap(), p);
    }
    let _ = parse_point_table(s);
}

fn all_seeds() -> Vec<Vec<u8>> {
    ["parse_rational", "parse_map", "parse_action", "parse_table", "parse_points"]
        .iter()
        .flat_map(|t| seeds(t))
        .map(|(_, s)| s.into_bytes())
        .collect()
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(2000))]

    // byte-level mutations of the seeds, a stable stand-in for the libFuzzer run
    #[test]
    fn mutated_seeds_never_panic(
        pick in 0usize..64,
        edits in proptest::collection::vec((0usize..256, proptest::prelude::any::<u8>(), 0u8..3), 1..6),
    ) {
        let all = all_seeds();
        let mut bytes = all[pick % all.len()].clone();
        for (at, b, op) in edits {
            let i = if bytes.is_empty() { 0 } else { at % bytes.len() };
            match op {
                0 if !bytes.is_empty() => bytes[i] = b,
                1 => bytes.insert(i, b),
                _ if !bytes.is_empty() => { bytes.remove(i); }
                _ => bytes.push(b),
            }
        }
        round_trips(&String::from_utf8_lossy(&bytes));
    }
}
