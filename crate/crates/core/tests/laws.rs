use std::time::Instant;

use kpn_core::laws::{check_axiom, check_random, GenParams, Instance, Law};
use kpn_core::{compose, duplication, generator, trace};

#[test]
fn trace_axioms_hold_on_200_instances() {
    let start = Instant::now();
    for law in Law::TRACE {
        let s = check_random(law, &GenParams::new(2024), 200).unwrap();
        assert_eq!(s.held, 200, "{law}");
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn every_law_on_200_instances() {
    for law in Law::ALL {
        let s = check_random(law, &GenParams::new(99), 200).unwrap();
        assert!(s.as_expected(), "{law}: {}/{}", s.held, s.checked);
    }
}

#[test]
fn raw_duplication_naturality_fails_with_operators() {
    let s = check_random(Law::DuplicationNaturalityRaw, &GenParams::new(5), 200).unwrap();
    let cx = s.counterexample.expect("a counterexample");
    assert!(cx.instance.nets.iter().any(|n| !n.operators().is_empty()));
    assert!(check_axiom(Law::DuplicationNaturality, &cx.instance).unwrap().holds);
}

#[test]
fn cyclic_counterexample_to_duplication_naturality() {
    // Two copies of a loop never share: their inputs differ.
    let sig = kpn_core::laws::law_signature();
    let d = generator(&sig, "d").unwrap();
    let looped = trace(&compose(&d, &duplication(1)).unwrap(), 1).unwrap();
    let inst = Instance { nets: vec![looped], widths: vec![] };
    assert!(!check_axiom(Law::DuplicationNaturality, &inst).unwrap().holds);
}
