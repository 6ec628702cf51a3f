//! Sharing/erasing rewriting and normal forms ("shared nets").
//!
//! * Sharing merges two operators with the same label reading the same ports,
//!   identifying their output ports pairwise.
//! * Erasing removes an operator none of whose output ports is read, neither by
//!   an operator input nor by a boundary output.
//!
//! Both rules remove exactly one operator, so every rewrite sequence has length
//! at most the operator count.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iso::{find_iso, NetIso};
use crate::net::{Net, OpId, Operator, PortId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Redex {
    /// Merge the second operator into the first (`first < second`).
    Sharing(OpId, OpId),
    Erasing(OpId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("redex {0:?} does not match the net")]
    StaleRedex(Redex),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: String, right: String },
}

fn is_sharing(net: &Net, a: OpId, b: OpId) -> bool {
    let ops = net.operators();
    match (ops.get(a), ops.get(b)) {
        (Some(x), Some(y)) => {
            a != b && x.label == y.label && x.inputs == y.inputs && x.outputs.len() == y.outputs.len()
        }
        _ => false,
    }
}

fn is_erasable(op: &Operator, reads: &[usize]) -> bool {
    op.outputs.iter().all(|&p| reads[p] == 0)
}

/// Every redex of `net`, sorted.
pub fn redexes(net: &Net) -> Vec<Redex> {
    let mut groups: BTreeMap<(&str, &[PortId]), Vec<OpId>> = BTreeMap::new();
    for (x, o) in net.operators().iter().enumerate() {
        groups
            .entry((o.label.as_str(), o.inputs.as_slice()))
            .or_default()
            .push(x);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                out.push(Redex::Sharing(a, b));
            }
        }
    }
    let reads = net.read_counts();
    for (x, o) in net.operators().iter().enumerate() {
        if is_erasable(o, &reads) {
            out.push(Redex::Erasing(x));
        }
    }
    out.sort_unstable();
    out
}

/// Removes operator `gone` and renumbers ports through `class`, dropping the
/// ports in `dropped`. Remaining ports keep their relative order.
fn rebuild(net: &Net, gone: OpId, class: impl Fn(PortId) -> PortId, dropped: &[bool]) -> Net {
    let mut new_id = vec![usize::MAX; net.port_count()];
    let mut next = 0;
    for p in 0..net.port_count() {
        let c = class(p);
        if dropped[c] {
            continue;
        }
        if new_id[c] == usize::MAX {
            new_id[c] = next;
            next += 1;
        }
    }
    let map = |p: &PortId| new_id[class(*p)];
    let operators = net
        .operators()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != gone)
        .map(|(_, o)| Operator {
            label: o.label.clone(),
            inputs: o.inputs.iter().map(map).collect(),
            outputs: o.outputs.iter().map(map).collect(),
        })
        .collect();
    Net::from_parts(
        next,
        operators,
        net.input_ports().iter().map(map).collect(),
        net.output_ports().iter().map(map).collect(),
    )
}

/// Applies one rewrite step.
pub fn apply(net: &Net, redex: Redex) -> Result<Net, RewriteError> {
    match redex {
        Redex::Sharing(a, b) => {
            if !is_sharing(net, a, b) {
                return Err(RewriteError::StaleRedex(redex));
            }
            let mut uf = UnionFind::new(net.port_count());
            for (&p, &q) in net.operator(a).outputs.iter().zip(&net.operator(b).outputs) {
                uf.union(p, q);
            }
            let roots: Vec<PortId> = (0..net.port_count()).map(|p| uf.find_mut(p)).collect();
            Ok(rebuild(
                net,
                b,
                |p| roots[p],
                &vec![false; net.port_count()],
            ))
        }
        Redex::Erasing(x) => {
            let reads = net.read_counts();
            let op = net
                .operators()
                .get(x)
                .filter(|o| is_erasable(o, &reads))
                .ok_or(RewriteError::StaleRedex(redex))?;
            let mut dropped = vec![false; net.port_count()];
            for &p in &op.outputs {
                dropped[p] = true;
            }
            Ok(rebuild(net, x, |p| p, &dropped))
        }
    }
}

/// A net in se-normal form: no two operators share label and inputs, and
/// every operator has at least one read output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedNet(Net);

impl SharedNet {
    /// Accepts `net` only if it is redex-free.
    pub fn new(net: Net) -> Result<Self, Net> {
        if redexes(&net).is_empty() {
            Ok(SharedNet(net))
        } else {
            Err(net)
        }
    }

    pub fn as_net(&self) -> &Net {
        &self.0
    }

    pub fn into_net(self) -> Net {
        self.0
    }

    /// Canonical identity of an operator: its label and source ports.
    pub fn operator_key(&self, op: OpId) -> (&str, &[PortId]) {
        let o = self.0.operator(op);
        (o.label.as_str(), o.inputs.as_slice())
    }
}

/// Result of a normalization run.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub net: SharedNet,
    pub steps: Vec<Redex>,
}

/// Rewrites until no redex remains, letting `choose` pick which redex to
/// apply among the current (sorted) list.
pub fn normalize_with(net: &Net, mut choose: impl FnMut(&[Redex]) -> usize) -> Normalized {
    let mut current = net.clone();
    let mut steps = Vec::new();
    loop {
        let rs = redexes(&current);
        if rs.is_empty() {
            break;
        }
        let pick = rs[choose(&rs).min(rs.len() - 1)];
        current = apply(&current, pick).expect("freshly enumerated redex applies");
        steps.push(pick);
    }
    Normalized {
        net: SharedNet(current),
        steps,
    }
}

/// Normal form under the leftmost strategy.
pub fn normalize(net: &Net) -> SharedNet {
    normalize_with(net, |_| 0).net
}

/// Decides se-equivalence by comparing normal forms up to isomorphism; the
/// witness relates the two normal forms.
pub fn se_equivalent(m: &Net, n: &Net) -> Result<Option<NetIso>, RewriteError> {
    if m.dom() != n.dom() || m.cod() != n.cod() {
        return Err(RewriteError::ArityMismatch {
            left: format!("{}->{}", m.dom(), m.cod()),
            right: format!("{}->{}", n.dom(), n.cod()),
        });
    }
    Ok(find_iso(normalize(m).as_net(), normalize(n).as_net()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::net::{compose, duplication, erasure, generator, identity, projection, tensor, Signature};

    fn sig() -> Signature {
        Signature::new()
            .with("alpha", 1, 1)
            .with("pair", 2, 1)
            .with("k", 0, 1)
    }

    fn alpha() -> Net {
        generator(&sig(), "alpha").unwrap()
    }

    #[test]
    fn duplicated_alpha_is_one_sharing_redex() {
        let left = compose(&duplication(1), &tensor(&alpha(), &alpha())).unwrap();
        assert_eq!(redexes(&left), vec![Redex::Sharing(0, 1)]);
        let right = compose(&alpha(), &duplication(1)).unwrap();
        let shared = apply(&left, Redex::Sharing(0, 1)).unwrap();
        assert!(is_isomorphic(&shared, &right));
        assert_eq!(shared.operators().len(), left.operators().len() - 1);
        assert!(!is_isomorphic(&left, &right));
    }

    #[test]
    fn identity_has_no_redexes() {
        assert!(redexes(&identity(3)).is_empty());
    }

    #[test]
    fn unread_operator_is_erased() {
        let dead = compose(&alpha(), &erasure(1)).unwrap();
        assert_eq!(redexes(&dead), vec![Redex::Erasing(0)]);
        let erased = apply(&dead, Redex::Erasing(0)).unwrap();
        assert!(is_isomorphic(&erased, &erasure(1)));
    }

    #[test]
    fn boundary_read_counts_as_use() {
        assert!(redexes(&alpha()).is_empty());
    }

    #[test]
    fn stale_redex_is_rejected() {
        let dead = compose(&alpha(), &erasure(1)).unwrap();
        assert_eq!(
            apply(&alpha(), Redex::Erasing(0)).unwrap_err(),
            RewriteError::StaleRedex(Redex::Erasing(0))
        );
        assert!(apply(&dead, Redex::Sharing(0, 0)).is_err());
        assert!(apply(&dead, Redex::Erasing(3)).is_err());
    }

    #[test]
    fn identical_constants_are_shared() {
        let k = generator(&sig(), "k").unwrap();
        let two = tensor(&k, &k);
        let nf = normalize(&two);
        assert_eq!(nf.as_net().operators().len(), 1);
        assert_eq!(nf.as_net().output_ports()[0], nf.as_net().output_ports()[1]);
    }

    #[test]
    fn sharing_cascades() {
        let chain = compose(&alpha(), &alpha()).unwrap();
        let twice = compose(&duplication(1), &tensor(&chain, &chain)).unwrap();
        let nf = normalize(&twice);
        assert_eq!(nf.as_net().operators().len(), 2);
        assert!(is_isomorphic(
            nf.as_net(),
            &compose(&chain, &duplication(1)).unwrap()
        ));
    }

    #[test]
    fn dead_code_is_removed_from_tensor() {
        let dead = compose(&compose(&alpha(), &alpha()).unwrap(), &erasure(1)).unwrap();
        let n = tensor(&alpha(), &dead);
        let nf = normalize(&n);
        assert!(is_isomorphic(nf.as_net(), &tensor(&alpha(), &erasure(1))));
    }

    #[test]
    fn se_equivalence_decisions() {
        let left = compose(&duplication(1), &tensor(&alpha(), &alpha())).unwrap();
        let right = compose(&alpha(), &duplication(1)).unwrap();
        assert!(se_equivalent(&left, &right).unwrap().is_some());
        let dup_proj = compose(&duplication(1), &projection(1, 1)).unwrap();
        assert!(se_equivalent(&identity(1), &dup_proj).unwrap().is_some());
        let swap = crate::net::symmetry(1, 1);
        assert!(se_equivalent(&identity(2), &swap).unwrap().is_none());
        assert!(matches!(
            se_equivalent(&identity(1), &identity(2)),
            Err(RewriteError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn shared_net_rejects_redexes() {
        let left = compose(&duplication(1), &tensor(&alpha(), &alpha())).unwrap();
        assert!(SharedNet::new(left).is_err());
        let s = SharedNet::new(alpha()).unwrap();
        assert_eq!(s.operator_key(0), ("alpha", &[0][..]));
    }
}
