mod common;

use common::{int_streams, random_net, rng};
use kpn_core::kahn::denote;
use kpn_core::laws::law_interpretation;
use kpn_core::rewrite::{normalize_with, redexes};
use kpn_core::{is_isomorphic, normalize};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn random_strategies_reach_isomorphic_normal_forms() {
    for seed in 0..500u64 {
        let net = random_net(seed);
        let ops = net.operators().len();
        let mut r1 = rng(seed ^ 0xA5A5);
        let mut r2 = rng(seed ^ 0x5A5A);
        let a = normalize_with(&net, |rs| r1.gen_range(0..rs.len()));
        let b = normalize_with(&net, |rs| r2.gen_range(0..rs.len()));
        assert!(a.steps.len() <= ops && b.steps.len() <= ops, "seed {seed}");
        assert!(is_isomorphic(a.net.as_net(), b.net.as_net()), "seed {seed}");
        assert!(redexes(a.net.as_net()).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let nf = normalize(&random_net(seed)).into_net();
        prop_assert_eq!(normalize(&nf).into_net(), nf);
    }

    #[test]
    fn rewriting_preserves_boundaries(seed in any::<u64>()) {
        let net = random_net(seed);
        let nf = normalize(&net);
        prop_assert_eq!((nf.as_net().dom(), nf.as_net().cod()), (net.dom(), net.cod()));
        prop_assert!(nf.as_net().validate(&kpn_core::laws::law_signature()).is_valid());
    }
}

#[test]
fn normalization_preserves_denotation() {
    let interp = law_interpretation();
    for seed in 0..100u64 {
        let net = random_net(seed);
        let inputs = int_streams(&mut rng(seed), net.dom());
        let before = denote(&net, &interp, &inputs, 40).unwrap();
        let after = denote(normalize(&net).as_net(), &interp, &inputs, 40).unwrap();
        assert_eq!(before, after, "seed {seed}");
    }
}
