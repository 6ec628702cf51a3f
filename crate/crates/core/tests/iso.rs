mod common;

use common::{random_net, shuffled};
use kpn_core::net::Operator;
use kpn_core::{find_iso, identity, is_isomorphic, symmetry, Net};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn renumbering_is_recovered(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let n = random_net(seed);
        let m = shuffled(&n, perm_seed);
        let iso = find_iso(&n, &m);
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().verify(&n, &m));
    }

    #[test]
    fn witnesses_invert_and_compose(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_net(seed);
        let b = shuffled(&a, s1);
        let c = shuffled(&b, s2);
        let ab = find_iso(&a, &b).unwrap();
        let bc = find_iso(&b, &c).unwrap();
        prop_assert!(ab.inverse().verify(&b, &a));
        prop_assert!(ab.then(&bc).verify(&a, &c));
    }

    #[test]
    fn decision_is_symmetric(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (m, n) = (random_net(s1), random_net(s2));
        prop_assert_eq!(is_isomorphic(&m, &n), is_isomorphic(&n, &m));
    }

    #[test]
    fn relabelling_an_operator_breaks_iso(seed in any::<u64>()) {
        let n = random_net(seed);
        prop_assume!(!n.operators().is_empty());
        let ops: Vec<Operator> = n
            .operators()
            .iter()
            .enumerate()
            .map(|(i, o)| if i == 0 { Operator { label: format!("{}'", o.label), ..o.clone() } } else { o.clone() })
            .collect();
        let m = Net::from_parts(n.port_count(), ops, n.input_ports().to_vec(), n.output_ports().to_vec());
        prop_assert!(!is_isomorphic(&n, &m));
    }
}

#[test]
fn boundary_order_matters() {
    assert!(!is_isomorphic(&identity(2), &symmetry(1, 1)));
    assert!(is_isomorphic(&symmetry(1, 1), &symmetry(1, 1)));
}
