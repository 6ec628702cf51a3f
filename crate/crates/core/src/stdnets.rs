//! The standard signature and the example nets built over it.
//!
//! The sampling period never appears in net structure: `scale` and `divc`
//! receive their constant from the interpretation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahn::{DivC, Eps, Interpretation, Iota, Minus, Plus, Scale};
use crate::net::{compose, duplication, generator, identity, tensor, trace, Net, Operator, Signature};

/// `plus, minus: 2->1`; `scale, divc, iota, eps: 1->1`; `alpha: 2->1`; `beta: 2->2`.
pub fn std_signature() -> Signature {
    Signature::new()
        .with("plus", 2, 1)
        .with("minus", 2, 1)
        .with("scale", 1, 1)
        .with("divc", 1, 1)
        .with("iota", 1, 1)
        .with("eps", 1, 1)
        .with("alpha", 2, 1)
        .with("beta", 2, 2)
}

/// Builtin stream functions for every standard symbol except `alpha`/`beta`,
/// with `scale` multiplying and `divc` dividing by `c`.
pub fn std_interpretation(c: f64) -> Interpretation {
    Interpretation::new()
        .bind("plus", Plus)
        .bind("minus", Minus)
        .bind("scale", Scale(c))
        .bind("divc", DivC(c))
        .bind("iota", Iota)
        .bind("eps", Eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StdNet {
    /// `0 -> 1`: the fixpoint of `iota`, tapped.
    Constant,
    /// `1 -> 1`: `y = x + iota(y)`.
    RunningSum,
    /// `1 -> 1`: `(eps(x) - x) / δ`.
    Differentiation,
    /// `1 -> 1`: `y = δ·x + iota(y)`.
    Integration,
    /// `2 -> 2`: the two-operator `alpha`/`beta` net.
    PaperExample,
}

impl StdNet {
    pub const ALL: [StdNet; 5] = [
        StdNet::Constant,
        StdNet::RunningSum,
        StdNet::Differentiation,
        StdNet::Integration,
        StdNet::PaperExample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StdNet::Constant => "constant",
            StdNet::RunningSum => "running_sum",
            StdNet::Differentiation => "differentiation",
            StdNet::Integration => "integration",
            StdNet::PaperExample => "paper_example",
        }
    }
}

impl fmt::Display for StdNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown standard net `{0}`")]
pub struct UnknownKind(pub String);

impl FromStr for StdNet {
    type Err = UnknownKind;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StdNet::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

fn gen(symbol: &str) -> Net {
    generator(&std_signature(), symbol).expect("standard symbol")
}

fn seq(nets: &[Net]) -> Net {
    nets.iter()
        .skip(1)
        .fold(nets[0].clone(), |acc, n| compose(&acc, n).expect("arities line up"))
}

/// Loop body `2 -> 2`: `(x, fb) ↦ dup(head(x) + iota(fb))`.
fn accumulator_body(head: Net) -> Net {
    seq(&[
        tensor(&head, &gen("iota")),
        gen("plus"),
        duplication(1),
    ])
}

pub fn build(kind: StdNet) -> Net {
    match kind {
        StdNet::Constant => {
            trace(&compose(&gen("iota"), &duplication(1)).unwrap(), 1).unwrap()
        }
        StdNet::RunningSum => trace(&accumulator_body(identity(1)), 1).unwrap(),
        StdNet::Integration => trace(&accumulator_body(gen("scale")), 1).unwrap(),
        StdNet::Differentiation => seq(&[
            duplication(1),
            tensor(&gen("eps"), &identity(1)),
            gen("minus"),
            gen("divc"),
        ]),
        StdNet::PaperExample => Net::from_parts(
            5,
            vec![
                Operator::new("alpha", vec![0, 4], vec![2]),
                Operator::new("beta", vec![2, 1], vec![3, 4]),
            ],
            vec![0, 1],
            vec![3, 4],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::kahn::{denote, Stream};
    use crate::rewrite::{redexes, se_equivalent};
    use crate::net::symmetry;

    #[test]
    fn all_validate_with_expected_arities() {
        let sig = std_signature();
        let arities = [(0, 1), (1, 1), (1, 1), (1, 1), (2, 2)];
        for (kind, (m, n)) in StdNet::ALL.into_iter().zip(arities) {
            let net = build(kind);
            assert!(net.validate(&sig).is_valid(), "{kind}");
            assert_eq!((net.dom(), net.cod()), (m, n), "{kind}");
            assert_eq!(kind.name().parse::<StdNet>().unwrap(), kind);
        }
        assert!("bogus".parse::<StdNet>().is_err());
    }

    #[test]
    fn paper_example_is_redex_free() {
        assert!(redexes(&build(StdNet::PaperExample)).is_empty());
    }

    #[test]
    fn running_sum_prefix_sums() {
        let out = denote(
            &build(StdNet::RunningSum),
            &std_interpretation(1.0),
            &[Stream(vec![1.0, 2.0, 3.0])],
            10,
        )
        .unwrap();
        assert_eq!(out, vec![Stream(vec![1.0, 3.0, 6.0])]);
    }

    #[test]
    fn differentiation_is_exact_forward_difference() {
        let s = vec![1.0, 4.0, 9.0, 16.0];
        let out = denote(
            &build(StdNet::Differentiation),
            &std_interpretation(0.5),
            &[Stream(s.clone())],
            5,
        )
        .unwrap();
        let expected: Vec<f64> = s.windows(2).map(|w| (w[1] - w[0]) / 0.5).collect();
        assert_eq!(out[0].0, expected);
    }

    #[test]
    fn integration_recurrence() {
        let s = vec![1.0, 2.0, 3.0, 4.0];
        let d = 0.25;
        let out = denote(
            &build(StdNet::Integration),
            &std_interpretation(d),
            &[Stream(s.clone())],
            20,
        )
        .unwrap();
        let mut y = d * s[0];
        let mut expected = vec![y];
        for &v in &s[1..] {
            y += d * v;
            expected.push(y);
        }
        assert_eq!(out[0].0, expected);
    }

    #[test]
    fn alternative_loop_wirings_are_se_equivalent() {
        // Delay on the feedback output instead of the feedback input.
        let body = seq(&[
            gen("plus"),
            duplication(1),
            tensor(&identity(1), &gen("iota")),
        ]);
        let alt = trace(&body, 1).unwrap();
        assert!(se_equivalent(&alt, &build(StdNet::RunningSum)).unwrap().is_some());

        // Tap taken from a duplicated feedback path, with a redundant copy of
        // the delay that sharing removes.
        let body = seq(&[
            tensor(&identity(1), &duplication(1)),
            tensor(&identity(1), &tensor(&gen("iota"), &gen("iota"))),
            tensor(&gen("plus"), &crate::net::erasure(1)),
            duplication(1),
        ]);
        let redundant = trace(&body, 1).unwrap();
        assert!(!is_isomorphic(&redundant, &build(StdNet::RunningSum)));
        assert!(se_equivalent(&redundant, &build(StdNet::RunningSum)).unwrap().is_some());

        let cst_alt = trace(&seq(&[gen("iota"), duplication(1), symmetry(1, 1)]), 1).unwrap();
        assert!(se_equivalent(&cst_alt, &build(StdNet::Constant)).unwrap().is_some());
    }
}
