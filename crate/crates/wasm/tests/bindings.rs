use dimspec_wasm::{describe_text, oracle_text, sweep_text};

#[test]
fn describe_power_sequence() {
    let s = describe_text("power", 1.0, 1e-4).unwrap();
    assert!(s.starts_with("{\"points\":10001,\"diameter\":1,"), "{s}");
}

#[test]
fn sweep_matches_the_cli_layout() {
    let csv = sweep_text("power", 1.0, 1e-5, 0.3, 0.6, 0.1).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,kind,value,slope_fit,admissible_rungs,witness_R"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().any(|r| r.starts_with("0.5,assouad,")));
    assert_eq!(csv, sweep_text("power", 1.0, 1e-5, 0.3, 0.6, 0.1).unwrap());
}

#[test]
fn oracle_curve_values() {
    let csv = oracle_text("power", 1.0, 0.2, 0.6, 0.2).unwrap();
    assert_eq!(csv, "theta,value\n0.2,0.625\n0.4,0.8333333333333334\n0.6,1\n");
    let flat = oracle_text("exponential", 1.0, 0.5, 0.5, 0.1).unwrap();
    assert_eq!(flat, "theta,value\n0.5,0\n");
}

#[test]
fn bad_input_is_reported() {
    assert!(describe_text("cantor", 1.0, 1e-3).is_err());
    assert!(describe_text("power", 1.0, 1e-9).unwrap_err().contains("too many"));
    assert!(sweep_text("power", 1.0, 1e-2, 0.1, 0.2, 0.1).is_err());
    assert!(oracle_text("power", -2.0, 0.1, 0.9, 0.1).is_err());
}
