mod common;

use std::sync::Arc;

use symcoh::flexibility::profile;
use symcoh::{scan, LieAlgebraSpec, Provenance, ScanConfig, SymplecticForm};

fn report(spec: &str, omega: &str) -> symcoh::CohomologyReport {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon(spec).unwrap());
    profile(SymplecticForm::from_text(spec, omega).unwrap()).unwrap()
}

fn config(witnesses: &[&str]) -> ScanConfig {
    ScanConfig { witnesses: witnesses.iter().map(|w| w.to_string()).collect(), ..ScanConfig::default() }
}

#[test]
fn special_parameter_is_semicontinuous() {
    let special = report("(0,0,0,12,14,15+23+24)", "-e16 - e25 + e34");
    let generic = report("(0,0,0,12,14,15+23+24)", "e13 + e26 - e45");
    for k in 1..=3 {
        assert!(special.c_hat(k) >= generic.c_hat(k));
        for q in 0..=11 {
            assert!(special.c_check(k, q) >= generic.c_check(k, q), "k={k} q={q}");
        }
    }
    assert!(special.c(1, 4) >= generic.c(1, 4));
    assert!(special.h(4) <= generic.h(4) && special.h(5) <= generic.h(5));
}

#[test]
fn four_dimensional_values_are_topological() {
    for (spec, omega) in [("(0,0,0,12)", "13+24"), ("(0,0,0,12)", "14+23"), ("(0,0,0,0)", "12+34")] {
        let r = report(spec, omega);
        assert_eq!(r.c_hat(2), r.b(1));
        assert_eq!(r.c_hat(1), r.b(2) - 1);
        assert_eq!(r.c(1, 3), r.b(3));
        assert_eq!(r.c(2, 3), r.b(3));
        assert_eq!(r.c(1, 4), r.b(4));
        assert_eq!(r.c(2, 2), r.b(2));
    }
}

#[test]
fn completely_solvable_four_dimensional_algebras_are_rigid() {
    for (name, witnesses) in [
        ("(0,0,0,12)", vec!["13+24", "14+23", "13+24+2*14"]),
        ("(13,-23,0,0)", vec!["12+34", "12+2*34", "12-1/3*34"]),
    ] {
        let spec = Arc::new(LieAlgebraSpec::parse_salamon(name).unwrap());
        let v = scan(&spec, &config(&witnesses)).unwrap();
        assert!(v.symplectic_found);
        for (key, set) in &v.value_sets {
            assert_eq!(set.len(), 1, "{name} {key}");
        }
        assert!(!v.c_flexible && !v.f_flexible && !v.h_flexible);
    }
}

#[test]
fn torus_is_not_flexible() {
    let spec = Arc::new(LieAlgebraSpec::abelian(6).unwrap());
    let v = scan(&spec, &ScanConfig { max_samples: 40, ..ScanConfig::default() }).unwrap();
    assert!(!v.c_flexible && !v.f_flexible && !v.h_flexible);
}

#[test]
fn filtered_and_harmonic_without_coeffective_flexibility() {
    let entry = symcoh::catalog::find_entry("(0,0,0,0,12,13)").unwrap();
    let witnesses: Vec<&str> = entry.witnesses.iter().map(String::as_str).collect();
    let v = scan(&entry.spec().unwrap(), &config(&witnesses)).unwrap();
    assert!(v.h_flexible && v.f_flexible && !v.c_flexible);
    let h4 = &v.value_sets["h_4"];
    assert!(h4.values().any(|o| o.provenance == Provenance::Witnessed));
}

#[test]
fn scan_is_deterministic_for_a_seed() {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,12,13,14+23)").unwrap());
    let cfg = ScanConfig { max_samples: 30, seed: 9, ..ScanConfig::default() };
    assert_eq!(scan(&spec, &cfg).unwrap(), scan(&spec, &cfg).unwrap());
}

#[test]
fn invalid_witness_is_an_error() {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,12)").unwrap());
    assert!(scan(&spec, &config(&["12+34"])).is_err());
}

#[test]
fn non_symplectic_algebra_finds_nothing() {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon("(23,-13,12,0)").unwrap());
    let v = scan(&spec, &ScanConfig { max_samples: 30, ..ScanConfig::default() }).unwrap();
    assert!(!v.symplectic_found);
}
