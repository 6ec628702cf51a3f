//! The net data structure and the categorical constructions on it.
//!
//! A net `m -> n` is a finite set of ports, a finite set of labelled operators,
//! an (arbitrary) source map and an injective target map. Operator input slot
//! `(x, i)` *reads* port `s(x, i)`; operator output slot `(x, j)` *drives* port
//! `t(x, j)`.
//!
//! Boundary orientation: boundary input `k` drives port `t(k)` (it is part of
//! the target map, so no operator may drive the same port), and boundary output
//! `k` reads port `s(k)`. Ports and operators are opaque naturals `0..len`.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type PortId = usize;
pub type OpId = usize;

/// Input/output count of a symbol (its arity and coarity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arity {
    pub inputs: usize,
    pub outputs: usize,
}

impl Arity {
    pub const fn new(inputs: usize, outputs: usize) -> Self {
        Self { inputs, outputs }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.inputs, self.outputs)
    }
}

/// Symbol table: name to arity/coarity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    symbols: BTreeMap<String, Arity>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insertion.
    pub fn with(mut self, name: impl Into<String>, inputs: usize, outputs: usize) -> Self {
        self.insert(name, Arity::new(inputs, outputs));
        self
    }

    /// Returns the previous arity if the symbol was already declared.
    pub fn insert(&mut self, name: impl Into<String>, arity: Arity) -> Option<Arity> {
        self.symbols.insert(name.into(), arity)
    }

    pub fn get(&self, name: &str) -> Option<Arity> {
        self.symbols.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Arity)> {
        self.symbols.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// An operator: an instance of a symbol. `inputs[i]` is `s(x, i)` and
/// `outputs[j]` is `t(x, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operator {
    pub label: String,
    pub inputs: Vec<PortId>,
    pub outputs: Vec<PortId>,
}

impl Operator {
    pub fn new(label: impl Into<String>, inputs: Vec<PortId>, outputs: Vec<PortId>) -> Self {
        Self {
            label: label.into(),
            inputs,
            outputs,
        }
    }

    pub fn arity(&self) -> Arity {
        Arity::new(self.inputs.len(), self.outputs.len())
    }
}

/// Element of the source domain `S_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SourceSlot {
    Operator { op: OpId, index: usize },
    Boundary(usize),
}

/// Element of the target domain `T_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TargetSlot {
    Operator { op: OpId, index: usize },
    Boundary(usize),
}

impl fmt::Display for SourceSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSlot::Operator { op, index } => write!(f, "s(x{op},{index})"),
            SourceSlot::Boundary(k) => write!(f, "s({k})"),
        }
    }
}

impl fmt::Display for TargetSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSlot::Operator { op, index } => write!(f, "t(x{op},{index})"),
            TargetSlot::Boundary(k) => write!(f, "t({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("trace over {feedback} wires of a net {dom}->{cod}")]
    ArityTooSmall {
        feedback: usize,
        dom: usize,
        cod: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("wiring output {index} selects input {selected} of a {width}-wide boundary")]
    InvalidWiring {
        index: usize,
        selected: usize,
        width: usize,
    },
}

/// A (not necessarily well-formed) net. See [`Net::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Net {
    ports: usize,
    operators: Vec<Operator>,
    /// `t(k)` for boundary input `k`.
    inputs: Vec<PortId>,
    /// `s(k)` for boundary output `k`.
    outputs: Vec<PortId>,
}

impl Net {
    /// Assembles a net from raw parts without checking anything.
    pub fn from_parts(
        ports: usize,
        operators: Vec<Operator>,
        inputs: Vec<PortId>,
        outputs: Vec<PortId>,
    ) -> Self {
        Self {
            ports,
            operators,
            inputs,
            outputs,
        }
    }

    /// Number of boundary inputs (`m`).
    pub fn dom(&self) -> usize {
        self.inputs.len()
    }

    /// Number of boundary outputs (`n`).
    pub fn cod(&self) -> usize {
        self.outputs.len()
    }

    pub fn port_count(&self) -> usize {
        self.ports
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn operator(&self, op: OpId) -> &Operator {
        &self.operators[op]
    }

    pub fn input_ports(&self) -> &[PortId] {
        &self.inputs
    }

    pub fn output_ports(&self) -> &[PortId] {
        &self.outputs
    }

    pub fn source(&self, slot: SourceSlot) -> Option<PortId> {
        match slot {
            SourceSlot::Operator { op, index } => {
                self.operators.get(op).and_then(|o| o.inputs.get(index).copied())
            }
            SourceSlot::Boundary(k) => self.outputs.get(k).copied(),
        }
    }

    pub fn target(&self, slot: TargetSlot) -> Option<PortId> {
        match slot {
            TargetSlot::Operator { op, index } => {
                self.operators.get(op).and_then(|o| o.outputs.get(index).copied())
            }
            TargetSlot::Boundary(k) => self.inputs.get(k).copied(),
        }
    }

    /// All source slots with the port they read, in canonical order.
    pub fn source_slots(&self) -> impl Iterator<Item = (SourceSlot, PortId)> + '_ {
        let ops = self.operators.iter().enumerate().flat_map(|(op, o)| {
            o.inputs
                .iter()
                .enumerate()
                .map(move |(index, &p)| (SourceSlot::Operator { op, index }, p))
        });
        ops.chain(
            self.outputs
                .iter()
                .enumerate()
                .map(|(k, &p)| (SourceSlot::Boundary(k), p)),
        )
    }

    /// All target slots with the port they drive, in canonical order.
    pub fn target_slots(&self) -> impl Iterator<Item = (TargetSlot, PortId)> + '_ {
        let ops = self.operators.iter().enumerate().flat_map(|(op, o)| {
            o.outputs
                .iter()
                .enumerate()
                .map(move |(index, &p)| (TargetSlot::Operator { op, index }, p))
        });
        ops.chain(
            self.inputs
                .iter()
                .enumerate()
                .map(|(k, &p)| (TargetSlot::Boundary(k), p)),
        )
    }

    /// The unique target slot driving each port, if any. Assumes `t` injective;
    /// on a clash the last slot wins.
    pub fn drivers(&self) -> Vec<Option<TargetSlot>> {
        let mut drivers = vec![None; self.ports];
        for (slot, p) in self.target_slots() {
            if let Some(d) = drivers.get_mut(p) {
                *d = Some(slot);
            }
        }
        drivers
    }

    /// Number of source slots reading each port (`|s^-1(p)|`).
    pub fn read_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.ports];
        for (_, p) in self.source_slots() {
            if let Some(c) = counts.get_mut(p) {
                *c += 1;
            }
        }
        counts
    }

    /// Checks the definitional constraints against `sig`.
    pub fn validate(&self, sig: &Signature) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (op, o) in self.operators.iter().enumerate() {
            match sig.get(&o.label) {
                None => report.violations.push(Violation::UnknownSymbol {
                    op,
                    label: o.label.clone(),
                }),
                Some(expected) if expected != o.arity() => {
                    report.violations.push(Violation::SlotMismatch {
                        op,
                        label: o.label.clone(),
                        expected,
                        found: o.arity(),
                    })
                }
                Some(_) => {}
            }
        }
        for (slot, port) in self.source_slots() {
            if port >= self.ports {
                report
                    .violations
                    .push(Violation::DanglingSource { slot, port });
            }
        }
        let mut by_port: BTreeMap<PortId, Vec<TargetSlot>> = BTreeMap::new();
        for (slot, port) in self.target_slots() {
            if port >= self.ports {
                report
                    .violations
                    .push(Violation::DanglingTarget { slot, port });
            } else {
                by_port.entry(port).or_default().push(slot);
            }
        }
        for (port, slots) in by_port.iter() {
            if slots.len() > 1 {
                report.violations.push(Violation::TargetNotInjective {
                    port: *port,
                    slots: slots.clone(),
                });
            }
        }
        for port in 0..self.ports {
            if !by_port.contains_key(&port) {
                report.notes.push(Note::Undriven(port));
            }
        }
        report
    }

    /// Panics if `t` is not injective. Used after quotient constructions.
    fn assert_targets_injective(&self) {
        let mut seen = vec![false; self.ports];
        for (slot, p) in self.target_slots() {
            assert!(!seen[p], "target map not injective at port {p} ({slot})");
            seen[p] = true;
        }
    }

    /// Renumbers ports by an arbitrary permutation `perm[old] = new`, and
    /// operators by `op_perm[old] = new`. Both must be bijections.
    pub fn renumbered(&self, perm: &[PortId], op_perm: &[OpId]) -> Net {
        assert_eq!(perm.len(), self.ports);
        assert_eq!(op_perm.len(), self.operators.len());
        let mut ops: Vec<Option<Operator>> = vec![None; self.operators.len()];
        for (old, o) in self.operators.iter().enumerate() {
            ops[op_perm[old]] = Some(Operator {
                label: o.label.clone(),
                inputs: o.inputs.iter().map(|&p| perm[p]).collect(),
                outputs: o.outputs.iter().map(|&p| perm[p]).collect(),
            });
        }
        Net {
            ports: self.ports,
            operators: ops
                .into_iter()
                .map(|o| o.expect("operator permutation is not a bijection"))
                .collect(),
            inputs: self.inputs.iter().map(|&p| perm[p]).collect(),
            outputs: self.outputs.iter().map(|&p| perm[p]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    TargetNotInjective { port: PortId, slots: Vec<TargetSlot> },
    DanglingSource { slot: SourceSlot, port: PortId },
    DanglingTarget { slot: TargetSlot, port: PortId },
    UnknownSymbol { op: OpId, label: String },
    SlotMismatch {
        op: OpId,
        label: String,
        expected: Arity,
        found: Arity,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TargetNotInjective { port, slots } => {
                write!(f, "target map not injective: port {port} driven by")?;
                for s in slots {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            Violation::DanglingSource { slot, port } => {
                write!(f, "{slot} refers to missing port {port}")
            }
            Violation::DanglingTarget { slot, port } => {
                write!(f, "{slot} refers to missing port {port}")
            }
            Violation::UnknownSymbol { op, label } => {
                write!(f, "operator x{op} has undeclared label `{label}`")
            }
            Violation::SlotMismatch {
                op,
                label,
                expected,
                found,
            } => write!(
                f,
                "operator x{op} labelled `{label}` has slots {found}, symbol declares {expected}"
            ),
        }
    }
}

/// Informational findings that do not make a net invalid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Note {
    /// Port not in the image of the target map; denotes bottom.
    Undriven(PortId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<Note>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Quotients `ports` by the classes of `uf`, renumbering classes in order of
/// their smallest member. Returns the class map and the class count.
fn quotient(uf: &mut UnionFind<usize>, ports: usize) -> (Vec<PortId>, usize) {
    let mut class_id: BTreeMap<usize, PortId> = BTreeMap::new();
    let mut map = Vec::with_capacity(ports);
    for p in 0..ports {
        let root = uf.find_mut(p);
        let next = class_id.len();
        map.push(*class_id.entry(root).or_insert(next));
    }
    let count = class_id.len();
    (map, count)
}

fn map_op(o: &Operator, offset: usize, q: &[PortId]) -> Operator {
    Operator {
        label: o.label.clone(),
        inputs: o.inputs.iter().map(|&p| q[p + offset]).collect(),
        outputs: o.outputs.iter().map(|&p| q[p + offset]).collect(),
    }
}

/// The identity net on `n` wires.
pub fn identity(n: usize) -> Net {
    Net {
        ports: n,
        operators: Vec::new(),
        inputs: (0..n).collect(),
        outputs: (0..n).collect(),
    }
}

/// Sequential composite `N ∘ M` (first `m`, then `n`).
pub fn compose(m: &Net, n: &Net) -> Result<Net, NetError> {
    if m.cod() != n.dom() {
        return Err(NetError::ArityMismatch {
            expected: m.cod(),
            found: n.dom(),
        });
    }
    let offset = m.ports;
    let total = m.ports + n.ports;
    let mut uf = UnionFind::new(total);
    for (k, &p) in m.outputs.iter().enumerate() {
        uf.union(p, offset + n.inputs[k]);
    }
    let (q, ports) = quotient(&mut uf, total);
    let operators = m
        .operators
        .iter()
        .map(|o| map_op(o, 0, &q))
        .chain(n.operators.iter().map(|o| map_op(o, offset, &q)))
        .collect();
    let net = Net {
        ports,
        operators,
        inputs: m.inputs.iter().map(|&p| q[p]).collect(),
        outputs: n.outputs.iter().map(|&p| q[offset + p]).collect(),
    };
    net.assert_targets_injective();
    Ok(net)
}

/// Parallel composite `M ⊗ N`.
pub fn tensor(m: &Net, n: &Net) -> Net {
    let offset = m.ports;
    let shift = |o: &Operator| Operator {
        label: o.label.clone(),
        inputs: o.inputs.iter().map(|&p| p + offset).collect(),
        outputs: o.outputs.iter().map(|&p| p + offset).collect(),
    };
    Net {
        ports: m.ports + n.ports,
        operators: m
            .operators
            .iter()
            .cloned()
            .chain(n.operators.iter().map(shift))
            .collect(),
        inputs: m
            .inputs
            .iter()
            .copied()
            .chain(n.inputs.iter().map(|&p| p + offset))
            .collect(),
        outputs: m
            .outputs
            .iter()
            .copied()
            .chain(n.outputs.iter().map(|&p| p + offset))
            .collect(),
    }
}

/// Tensor of a sequence of nets; `identity(0)` when empty.
pub fn tensor_all<'a>(nets: impl IntoIterator<Item = &'a Net>) -> Net {
    nets.into_iter()
        .fold(identity(0), |acc, n| tensor(&acc, n))
}

/// Feedback over the last `feedback` wires: `Tr^feedback(N) : n1 -> n2` for
/// `N : n1 + feedback -> n2 + feedback`.
pub fn trace(net: &Net, feedback: usize) -> Result<Net, NetError> {
    if net.dom() < feedback || net.cod() < feedback {
        return Err(NetError::ArityTooSmall {
            feedback,
            dom: net.dom(),
            cod: net.cod(),
        });
    }
    let n1 = net.dom() - feedback;
    let n2 = net.cod() - feedback;
    let mut uf = UnionFind::new(net.ports);
    for k in 0..feedback {
        uf.union(net.outputs[n2 + k], net.inputs[n1 + k]);
    }
    let (q, ports) = quotient(&mut uf, net.ports);
    let result = Net {
        ports,
        operators: net.operators.iter().map(|o| map_op(o, 0, &q)).collect(),
        inputs: net.inputs[..n1].iter().map(|&p| q[p]).collect(),
        outputs: net.outputs[..n2].iter().map(|&p| q[p]).collect(),
    };
    result.assert_targets_injective();
    Ok(result)
}

/// Pure wiring net `m -> selection.len()`: one port per input, output `k`
/// reads input `selection[k]`. Permutations, duplications, erasures and
/// projections are all instances.
pub fn wiring(m: usize, selection: &[usize]) -> Result<Net, NetError> {
    if let Some((index, &selected)) = selection.iter().enumerate().find(|(_, &s)| s >= m) {
        return Err(NetError::InvalidWiring {
            index,
            selected,
            width: m,
        });
    }
    Ok(Net {
        ports: m,
        operators: Vec::new(),
        inputs: (0..m).collect(),
        outputs: selection.to_vec(),
    })
}

fn wiring_unchecked(m: usize, selection: Vec<usize>) -> Net {
    Net {
        ports: m,
        operators: Vec::new(),
        inputs: (0..m).collect(),
        outputs: selection,
    }
}

/// Symmetry `γ_{m,n} : m + n -> n + m`.
pub fn symmetry(m: usize, n: usize) -> Net {
    wiring_unchecked(m + n, (m..m + n).chain(0..m).collect())
}

/// Duplication `δ_n : n -> n + n`.
pub fn duplication(n: usize) -> Net {
    wiring_unchecked(n, (0..n).chain(0..n).collect())
}

/// Erasure `ε_n : n -> 0`.
pub fn erasure(n: usize) -> Net {
    wiring_unchecked(n, Vec::new())
}

/// First projection `m + n -> m`.
pub fn projection(m: usize, n: usize) -> Net {
    wiring_unchecked(m + n, (0..m).collect())
}

/// Second projection `m + n -> n`.
pub fn projection_second(m: usize, n: usize) -> Net {
    wiring_unchecked(m + n, (m..m + n).collect())
}

/// The net consisting of a single operator labelled `symbol`, with ports
/// `0..σ` for its inputs and `σ..σ+τ` for its outputs.
pub fn generator(sig: &Signature, symbol: &str) -> Result<Net, NetError> {
    let arity = sig
        .get(symbol)
        .ok_or_else(|| NetError::UnknownSymbol(symbol.to_string()))?;
    let (a, c) = (arity.inputs, arity.outputs);
    Ok(Net {
        ports: a + c,
        operators: vec![Operator::new(symbol, (0..a).collect(), (a..a + c).collect())],
        inputs: (0..a).collect(),
        outputs: (a..a + c).collect(),
    })
}

/// Parameters of the structural nets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Structural {
    Identity(usize),
    Symmetry(usize, usize),
    Duplication(usize),
    Erasure(usize),
    Projection(usize, usize),
    ProjectionSecond(usize, usize),
    Generator(String),
}

impl Structural {
    pub fn build(&self, sig: &Signature) -> Result<Net, NetError> {
        Ok(match self {
            Structural::Identity(n) => identity(*n),
            Structural::Symmetry(m, n) => symmetry(*m, *n),
            Structural::Duplication(n) => duplication(*n),
            Structural::Erasure(n) => erasure(*n),
            Structural::Projection(m, n) => projection(*m, *n),
            Structural::ProjectionSecond(m, n) => projection_second(*m, *n),
            Structural::Generator(symbol) => generator(sig, symbol)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new()
            .with("alpha", 2, 1)
            .with("beta", 2, 2)
            .with("iota", 1, 1)
    }

    pub(crate) fn paper_example() -> Net {
        Net::from_parts(
            5,
            vec![
                Operator::new("alpha", vec![0, 4], vec![2]),
                Operator::new("beta", vec![2, 1], vec![3, 4]),
            ],
            vec![0, 1],
            vec![3, 4],
        )
    }

    #[test]
    fn paper_example_is_valid() {
        let report = paper_example().validate(&sig());
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.notes.is_empty());
    }

    #[test]
    fn clashing_targets_are_reported() {
        let mut net = paper_example();
        net.operators[1].outputs = vec![3, 3];
        let report = net.validate(&sig());
        assert_eq!(
            report.violations,
            vec![Violation::TargetNotInjective {
                port: 3,
                slots: vec![
                    TargetSlot::Operator { op: 1, index: 0 },
                    TargetSlot::Operator { op: 1, index: 1 }
                ]
            }]
        );
    }

    #[test]
    fn every_violation_kind_is_reported() {
        let net = Net::from_parts(
            2,
            vec![
                Operator::new("gamma", vec![0], vec![1]),
                Operator::new("alpha", vec![0], vec![7]),
            ],
            vec![0],
            vec![5],
        );
        let report = net.validate(&sig());
        assert!(report
            .violations
            .contains(&Violation::UnknownSymbol { op: 0, label: "gamma".into() }));
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::SlotMismatch { op: 1, .. }
        )));
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::DanglingTarget { port: 7, .. }
        )));
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::DanglingSource { slot: SourceSlot::Boundary(0), port: 5 }
        )));
    }

    #[test]
    fn undriven_ports_are_notes_only() {
        let net = trace(&duplication(1), 1).unwrap();
        let report = net.validate(&sig());
        assert!(report.is_valid());
        assert_eq!(report.notes, vec![Note::Undriven(0)]);
    }

    #[test]
    fn identity_shapes() {
        let empty = identity(0);
        assert_eq!(empty.port_count(), 0);
        assert!(empty.validate(&sig()).is_valid());
        let two = identity(2);
        assert_eq!(two.input_ports(), &[0, 1]);
        assert_eq!(two.output_ports(), &[0, 1]);
        assert!(identity(5).validate(&sig()).is_valid());
    }

    #[test]
    fn composing_two_generators_glues_one_port() {
        let g = generator(&sig(), "iota").unwrap();
        let c = compose(&g, &g).unwrap();
        assert_eq!(c.port_count(), 3);
        assert_eq!(c.operators().len(), 2);
        assert_eq!(c.operator(0).outputs, c.operator(1).inputs);
        assert!(c.validate(&sig()).is_valid());
    }

    #[test]
    fn compose_rejects_mismatched_arities() {
        let err = compose(&identity(2), &identity(3)).unwrap_err();
        assert_eq!(err, NetError::ArityMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn tensor_of_alpha_and_beta() {
        let s = sig();
        let t = tensor(&generator(&s, "alpha").unwrap(), &generator(&s, "beta").unwrap());
        assert_eq!((t.dom(), t.cod()), (4, 3));
        assert_eq!(t.port_count(), 7);
        assert_eq!(t.operators().len(), 2);
        assert!(t.validate(&s).is_valid());
    }

    #[test]
    fn trace_needs_enough_wires() {
        let err = trace(&identity(1), 2).unwrap_err();
        assert!(matches!(err, NetError::ArityTooSmall { .. }));
    }

    #[test]
    fn structural_nets_match_their_definitions() {
        let d = duplication(1);
        assert_eq!((d.port_count(), d.input_ports(), d.output_ports()), (1, &[0][..], &[0, 0][..]));
        let e = erasure(1);
        assert_eq!((e.port_count(), e.input_ports(), e.cod()), (1, &[0][..], 0));
        let g = generator(&sig(), "alpha").unwrap();
        assert_eq!(g.port_count(), 3);
        assert_eq!(g.operator(0).inputs, vec![0, 1]);
        assert_eq!(g.operator(0).outputs, vec![2]);
        assert_eq!(g.input_ports(), &[0, 1]);
        assert_eq!(g.output_ports(), &[2]);
        assert_eq!(
            generator(&sig(), "gamma").unwrap_err(),
            NetError::UnknownSymbol("gamma".into())
        );
        assert!(wiring(1, &[1]).is_err());
    }

    #[test]
    fn constant_loop_is_closed() {
        let s = sig();
        let body = compose(&generator(&s, "iota").unwrap(), &duplication(1)).unwrap();
        let cst = trace(&body, 1).unwrap();
        assert_eq!((cst.dom(), cst.cod()), (0, 1));
        assert_eq!(cst.port_count(), 1);
        assert_eq!(cst.operator(0).inputs, cst.operator(0).outputs);
        assert!(cst.validate(&s).is_valid());
    }
}
