//! Kahn-domain semantics: streams are finite prefixes ordered by prefix, and a
//! net denotes the least solution of its port equations.
//!
//! The solver runs Kleene sweeps from the all-bottom assignment. Within a sweep
//! operators are visited in a fixed dependency order and read the freshest port
//! values (chaotic iteration); the sweep sequence is still an ascending chain
//! below the least fixpoint, it just climbs faster than a Jacobi sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net::{Arity, Net, OpId, PortId, Signature};

/// A finite stream prefix. The empty stream is bottom.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stream(pub Vec<f64>);

impl Stream {
    pub fn bottom() -> Self {
        Stream(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Prefix order `self ⊑ other`. Values compare bitwise so that NaN
    /// entries still order consistently.
    pub fn is_prefix_of(&self, other: &Stream) -> bool {
        self.len() <= other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    pub fn truncated(mut self, cap: Option<usize>) -> Self {
        if let Some(cap) = cap {
            self.0.truncate(cap);
        }
        self
    }

    /// First `len` elements.
    pub fn prefix(&self, len: usize) -> &[f64] {
        &self.0[..len.min(self.len())]
    }
}

impl From<Vec<f64>> for Stream {
    fn from(v: Vec<f64>) -> Self {
        Stream(v)
    }
}

impl<const N: usize> From<[f64; N]> for Stream {
    fn from(v: [f64; N]) -> Self {
        Stream(v.to_vec())
    }
}

/// A monotone function on stream tuples.
///
/// `previous` holds the function's own outputs from the preceding
/// approximation step (bottom on the first call). Ordinary stream functions
/// ignore it; non-strict producers use it to grow their output by one element
/// per step, so that their infinite output is reached as a supremum.
pub trait StreamFn: Send + Sync + fmt::Debug {
    fn arity(&self) -> Arity;
    fn apply(&self, inputs: &[&Stream], previous: &[&Stream]) -> Vec<Stream>;
}

fn zip_with(a: &Stream, b: &Stream, f: impl Fn(f64, f64) -> f64) -> Stream {
    Stream(a.0.iter().zip(&b.0).map(|(&x, &y)| f(x, y)).collect())
}

fn map(a: &Stream, f: impl Fn(f64) -> f64) -> Stream {
    Stream(a.0.iter().map(|&x| f(x)).collect())
}

/// Pointwise sum; output length is the shorter input length.
#[derive(Debug, Clone, Copy)]
pub struct Plus;
/// Pointwise difference `a - b`.
#[derive(Debug, Clone, Copy)]
pub struct Minus;
/// Pointwise multiplication by a constant.
#[derive(Debug, Clone, Copy)]
pub struct Scale(pub f64);
/// Pointwise division by a constant.
#[derive(Debug, Clone, Copy)]
pub struct DivC(pub f64);
/// Prepends a 0.
#[derive(Debug, Clone, Copy)]
pub struct Iota;
/// Drops the first element.
#[derive(Debug, Clone, Copy)]
pub struct Eps;
/// Nullary producer of the infinite constant stream, one element per step.
#[derive(Debug, Clone, Copy)]
pub struct ConstK(pub f64);

/// Pointwise lifting of a real function.
#[derive(Clone)]
pub struct Lift {
    pub name: String,
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Lift {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Lift {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lift({})", self.name)
    }
}

impl StreamFn for Plus {
    fn arity(&self) -> Arity {
        Arity::new(2, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![zip_with(inputs[0], inputs[1], |a, b| a + b)]
    }
}

impl StreamFn for Minus {
    fn arity(&self) -> Arity {
        Arity::new(2, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![zip_with(inputs[0], inputs[1], |a, b| a - b)]
    }
}

impl StreamFn for Scale {
    fn arity(&self) -> Arity {
        Arity::new(1, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![map(inputs[0], |a| a * self.0)]
    }
}

impl StreamFn for DivC {
    fn arity(&self) -> Arity {
        Arity::new(1, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![map(inputs[0], |a| a / self.0)]
    }
}

impl StreamFn for Iota {
    fn arity(&self) -> Arity {
        Arity::new(1, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        let mut v = Vec::with_capacity(inputs[0].len() + 1);
        v.push(0.0);
        v.extend_from_slice(&inputs[0].0);
        vec![Stream(v)]
    }
}

impl StreamFn for Eps {
    fn arity(&self) -> Arity {
        Arity::new(1, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![Stream(inputs[0].0.iter().skip(1).copied().collect())]
    }
}

impl StreamFn for ConstK {
    fn arity(&self) -> Arity {
        Arity::new(0, 1)
    }
    fn apply(&self, _: &[&Stream], previous: &[&Stream]) -> Vec<Stream> {
        let mut v = previous.first().map(|s| s.0.clone()).unwrap_or_default();
        v.push(self.0);
        vec![Stream(v)]
    }
}

impl StreamFn for Lift {
    fn arity(&self) -> Arity {
        Arity::new(1, 1)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        vec![map(inputs[0], |a| (self.f)(a))]
    }
}

/// Symbol name to stream function.
#[derive(Clone, Debug, Default)]
pub struct Interpretation {
    bindings: BTreeMap<String, Arc<dyn StreamFn>>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, symbol: impl Into<String>, f: impl StreamFn + 'static) -> Self {
        self.bindings.insert(symbol.into(), Arc::new(f));
        self
    }

    pub fn bind_arc(mut self, symbol: impl Into<String>, f: Arc<dyn StreamFn>) -> Self {
        self.bindings.insert(symbol.into(), f);
        self
    }

    pub fn get(&self, symbol: &str) -> Option<&Arc<dyn StreamFn>> {
        self.bindings.get(symbol)
    }

    /// Symbols of `sig` that are unbound or bound with the wrong arity.
    pub fn mismatches(&self, sig: &Signature) -> Vec<String> {
        sig.iter()
            .filter(|(name, arity)| self.get(name).map(|f| f.arity()) != Some(*arity))
            .map(|(name, _)| name.to_string())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no interpretation bound for symbol `{0}`")]
    MissingBinding(String),
    #[error("operator x{op} (`{label}`) retracted its output on port {port} at sweep {sweep}")]
    MonotonicityViolation {
        op: OpId,
        label: String,
        port: PortId,
        sweep: usize,
    },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
}

/// Evaluation limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of Kleene sweeps.
    pub sweeps: usize,
    /// Every port stream is truncated to this length, if set.
    pub cap: Option<usize>,
}

impl Budget {
    pub fn sweeps(sweeps: usize) -> Self {
        Budget { sweeps, cap: None }
    }
}

/// Port assignment reached by [`solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub ports: Vec<Stream>,
    pub outputs: Vec<Stream>,
    pub sweeps: usize,
    /// A sweep changed nothing: the assignment is the least fixpoint (under
    /// the cap, if any).
    pub converged: bool,
    /// Total defined length over all ports after each sweep.
    pub progress: Vec<usize>,
}

/// Operator visiting order: producers before consumers, cycles broken at the
/// lowest-numbered remaining operator.
pub(crate) fn schedule(net: &Net) -> Vec<OpId> {
    let ops = net.operators();
    let mut driver: Vec<Option<OpId>> = vec![None; net.port_count()];
    for (x, o) in ops.iter().enumerate() {
        for &p in &o.outputs {
            driver[p] = Some(x);
        }
    }
    let mut pending: Vec<usize> = ops
        .iter()
        .map(|o| o.inputs.iter().filter(|&&p| driver[p].is_some()).count())
        .collect();
    let mut consumers: Vec<Vec<OpId>> = vec![Vec::new(); ops.len()];
    for (x, o) in ops.iter().enumerate() {
        for &p in &o.inputs {
            if let Some(d) = driver[p] {
                consumers[d].push(x);
            }
        }
    }
    let mut done = vec![false; ops.len()];
    let mut order = Vec::with_capacity(ops.len());
    let mut ready: std::collections::BTreeSet<OpId> =
        (0..ops.len()).filter(|&x| pending[x] == 0).collect();
    while order.len() < ops.len() {
        let x = match ready.pop_first() {
            Some(x) => x,
            None => (0..ops.len()).find(|&x| !done[x]).expect("operators remain"),
        };
        if done[x] {
            continue;
        }
        done[x] = true;
        order.push(x);
        for &c in &consumers[x] {
            pending[c] = pending[c].saturating_sub(1);
            if pending[c] == 0 && !done[c] {
                ready.insert(c);
            }
        }
    }
    order
}

pub(crate) fn resolve(net: &Net, interp: &Interpretation) -> Result<Vec<Arc<dyn StreamFn>>, EvalError> {
    net.operators()
        .iter()
        .enumerate()
        .map(|(x, o)| {
            let f = interp
                .get(&o.label)
                .ok_or_else(|| EvalError::MissingBinding(o.label.clone()))?;
            if f.arity() != o.arity() {
                return Err(EvalError::ArityMismatch(format!(
                    "operator x{x} `{}` has slots {}, its interpretation {}",
                    o.label,
                    o.arity(),
                    f.arity()
                )));
            }
            Ok(f.clone())
        })
        .collect()
}

/// Solves the port equations of `net` by Kleene sweeps.
pub fn solve(
    net: &Net,
    interp: &Interpretation,
    inputs: &[Stream],
    budget: Budget,
) -> Result<Solution, EvalError> {
    if inputs.len() != net.dom() {
        return Err(EvalError::ArityMismatch(format!(
            "net takes {} inputs, {} given",
            net.dom(),
            inputs.len()
        )));
    }
    let fns = resolve(net, interp)?;
    let order = schedule(net);
    let mut ports = vec![Stream::bottom(); net.port_count()];
    for (&p, s) in net.input_ports().iter().zip(inputs) {
        ports[p] = s.clone().truncated(budget.cap);
    }
    let mut progress = Vec::new();
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < budget.sweeps {
        sweeps += 1;
        let mut changed = false;
        for &x in &order {
            let op = net.operator(x);
            let results = {
                let ins: Vec<&Stream> = op.inputs.iter().map(|&p| &ports[p]).collect();
                let prev: Vec<&Stream> = op.outputs.iter().map(|&p| &ports[p]).collect();
                fns[x].apply(&ins, &prev)
            };
            if results.len() != op.outputs.len() {
                return Err(EvalError::ArityMismatch(format!(
                    "operator x{x} `{}` returned {} streams for {} outputs",
                    op.label,
                    results.len(),
                    op.outputs.len()
                )));
            }
            for (&p, new) in op.outputs.iter().zip(results) {
                let new = new.truncated(budget.cap);
                if !ports[p].is_prefix_of(&new) {
                    return Err(EvalError::MonotonicityViolation {
                        op: x,
                        label: op.label.clone(),
                        port: p,
                        sweep: sweeps,
                    });
                }
                if new.len() > ports[p].len() {
                    changed = true;
                    ports[p] = new;
                }
            }
        }
        progress.push(ports.iter().map(Stream::len).sum());
        if !changed {
            converged = true;
            break;
        }
    }
    let outputs = net.output_ports().iter().map(|&p| ports[p].clone()).collect();
    Ok(Solution {
        ports,
        outputs,
        sweeps,
        converged,
        progress,
    })
}

/// The streams at the boundary outputs after at most `budget` sweeps.
pub fn denote(
    net: &Net,
    interp: &Interpretation,
    inputs: &[Stream],
    budget: usize,
) -> Result<Vec<Stream>, EvalError> {
    Ok(solve(net, interp, inputs, Budget::sweeps(budget))?.outputs)
}

/// A net viewed as a stream function (its denotation as an open system).
#[derive(Clone, Debug)]
pub struct NetFn {
    pub net: Net,
    pub interp: Interpretation,
    pub budget: usize,
}

impl StreamFn for NetFn {
    fn arity(&self) -> Arity {
        Arity::new(self.net.dom(), self.net.cod())
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        let owned: Vec<Stream> = inputs.iter().map(|s| (*s).clone()).collect();
        match solve(&self.net, &self.interp, &owned, Budget::sweeps(self.budget)) {
            Ok(sol) => sol.outputs,
            // Bottom is the only safe monotone answer once evaluation fails.
            Err(_) => vec![Stream::bottom(); self.net.cod()],
        }
    }
}

/// Outcome of the fixpoint trace.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceOutcome {
    pub outputs: Vec<Stream>,
    pub iterations: usize,
    pub converged: bool,
}

/// `Tr(f)(a) = π_B(fix(f_a ∘ π_X))`, iterating from the bottom tuple.
pub fn trace_apply(
    f: &dyn StreamFn,
    feedback: usize,
    inputs: &[&Stream],
    budget: usize,
) -> Result<TraceOutcome, EvalError> {
    let arity = f.arity();
    if arity.inputs < feedback || arity.outputs < feedback {
        return Err(EvalError::ArityMismatch(format!(
            "trace over {feedback} wires of a {arity} function"
        )));
    }
    let a = arity.inputs - feedback;
    let b = arity.outputs - feedback;
    if inputs.len() != a {
        return Err(EvalError::ArityMismatch(format!(
            "traced function takes {a} inputs, {} given",
            inputs.len()
        )));
    }
    let mut state = vec![Stream::bottom(); b + feedback];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < budget {
        iterations += 1;
        let next = {
            let mut args: Vec<&Stream> = inputs.to_vec();
            args.extend(state[b..].iter());
            let prev: Vec<&Stream> = state.iter().collect();
            f.apply(&args, &prev)
        };
        if next.len() != state.len() {
            return Err(EvalError::ArityMismatch(format!(
                "function returned {} streams, expected {}",
                next.len(),
                state.len()
            )));
        }
        if let Some(port) = state.iter().zip(&next).position(|(o, n)| !o.is_prefix_of(n)) {
            return Err(EvalError::MonotonicityViolation {
                op: 0,
                label: format!("{f:?}"),
                port,
                sweep: iterations,
            });
        }
        if next == state {
            converged = true;
            break;
        }
        state = next;
    }
    state.truncate(b);
    Ok(TraceOutcome {
        outputs: state,
        iterations,
        converged,
    })
}

/// The traced function as a [`StreamFn`] (metadata dropped).
#[derive(Clone, Debug)]
pub struct Traced {
    pub inner: Arc<dyn StreamFn>,
    pub feedback: usize,
    pub budget: usize,
}

/// `trace_fn(f, x, budget)`: the fixpoint trace of `f : a+x -> b+x`.
pub fn trace_fn(inner: Arc<dyn StreamFn>, feedback: usize, budget: usize) -> Result<Traced, EvalError> {
    let arity = inner.arity();
    if arity.inputs < feedback || arity.outputs < feedback {
        return Err(EvalError::ArityMismatch(format!(
            "trace over {feedback} wires of a {arity} function"
        )));
    }
    Ok(Traced {
        inner,
        feedback,
        budget,
    })
}

impl StreamFn for Traced {
    fn arity(&self) -> Arity {
        let a = self.inner.arity();
        Arity::new(a.inputs - self.feedback, a.outputs - self.feedback)
    }
    fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
        trace_apply(self.inner.as_ref(), self.feedback, inputs, self.budget)
            .map(|t| t.outputs)
            .unwrap_or_else(|_| vec![Stream::bottom(); self.arity().outputs])
    }
}

/// Which preservation law to test.
#[derive(Clone, Debug)]
pub enum Functoriality {
    /// `⟦N ∘ M⟧ = ⟦N⟧ ∘ ⟦M⟧`.
    Compose(Net, Net),
    /// `⟦M ⊗ N⟧ = ⟦M⟧ × ⟦N⟧`.
    Tensor(Net, Net),
    /// `⟦Tr^n(N)⟧ = Tr^n(⟦N⟧)` with the fixpoint trace.
    Trace(Net, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub sample: usize,
    pub left: Vec<Stream>,
    pub right: Vec<Stream>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctorialityReport {
    pub samples: usize,
    pub mismatches: Vec<Mismatch>,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Prefix agreement up to the common defined length; if both sides are known
/// to be exact fixpoints the lengths must agree too.
pub fn streams_agree(left: &[Stream], right: &[Stream], both_exact: bool) -> bool {
    left.len() == right.len()
        && left.iter().zip(right).all(|(l, r)| {
            let n = l.len().min(r.len());
            let same = l.prefix(n) == r.prefix(n);
            same && (!both_exact || l.len() == r.len())
        })
}

/// Checks one of the preservation laws on every sample input tuple.
pub fn check_functoriality(
    law: &Functoriality,
    interp: &Interpretation,
    samples: &[Vec<Stream>],
    budget: usize,
) -> Result<FunctorialityReport, crate::net::NetError> {
    let combined = match law {
        Functoriality::Compose(m, n) => crate::net::compose(m, n)?,
        Functoriality::Tensor(m, n) => crate::net::tensor(m, n),
        Functoriality::Trace(n, k) => crate::net::trace(n, *k)?,
    };
    let mut mismatches = Vec::new();
    for (i, input) in samples.iter().enumerate() {
        let (left, left_exact) = match solve(&combined, interp, input, Budget::sweeps(budget)) {
            Ok(sol) => (sol.outputs, sol.converged),
            Err(_) => (vec![Stream::bottom(); combined.cod()], false),
        };
        let (right, right_exact) = split_side(law, interp, input, budget);
        if !streams_agree(&left, &right, left_exact && right_exact) {
            mismatches.push(Mismatch {
                sample: i,
                left,
                right,
            });
        }
    }
    Ok(FunctorialityReport {
        samples: samples.len(),
        mismatches,
    })
}

fn split_side(
    law: &Functoriality,
    interp: &Interpretation,
    input: &[Stream],
    budget: usize,
) -> (Vec<Stream>, bool) {
    let run = |net: &Net, ins: &[Stream]| solve(net, interp, ins, Budget::sweeps(budget)).ok();
    match law {
        Functoriality::Compose(m, n) => {
            let Some(first) = run(m, input) else {
                return (vec![Stream::bottom(); n.cod()], false);
            };
            match run(n, &first.outputs) {
                Some(second) => (second.outputs, first.converged && second.converged),
                None => (vec![Stream::bottom(); n.cod()], false),
            }
        }
        Functoriality::Tensor(m, n) => {
            let (a, b) = input.split_at(m.dom().min(input.len()));
            match (run(m, a), run(n, b)) {
                (Some(x), Some(y)) => {
                    let exact = x.converged && y.converged;
                    (x.outputs.into_iter().chain(y.outputs).collect(), exact)
                }
                _ => (vec![Stream::bottom(); m.cod() + n.cod()], false),
            }
        }
        Functoriality::Trace(n, k) => {
            let f = NetFn {
                net: n.clone(),
                interp: interp.clone(),
                budget,
            };
            let refs: Vec<&Stream> = input.iter().collect();
            match trace_apply(&f, *k, &refs, budget) {
                // The inner solves are not tracked, so never claim exactness.
                Ok(t) => (t.outputs, false),
                Err(_) => (vec![Stream::bottom(); n.cod().saturating_sub(*k)], false),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{compose, duplication, generator, identity, symmetry, tensor, trace};

    fn sig() -> Signature {
        Signature::new()
            .with("plus", 2, 1)
            .with("iota", 1, 1)
            .with("scale", 1, 1)
            .with("eps", 1, 1)
            .with("k", 0, 1)
    }

    fn interp() -> Interpretation {
        Interpretation::new()
            .bind("plus", Plus)
            .bind("iota", Iota)
            .bind("scale", Scale(2.0))
            .bind("eps", Eps)
            .bind("k", ConstK(7.0))
    }

    fn gen(name: &str) -> Net {
        generator(&sig(), name).unwrap()
    }

    fn running_sum() -> Net {
        let body = compose(
            &compose(&tensor(&identity(1), &gen("iota")), &gen("plus")).unwrap(),
            &duplication(1),
        )
        .unwrap();
        trace(&body, 1).unwrap()
    }

    fn s(v: &[f64]) -> Stream {
        Stream(v.to_vec())
    }

    #[test]
    fn builtin_lengths() {
        let a = s(&[1.0, 2.0, 3.0]);
        let b = s(&[10.0]);
        assert_eq!(Plus.apply(&[&a, &b], &[]), vec![s(&[11.0])]);
        assert_eq!(Minus.apply(&[&a, &a], &[]), vec![s(&[0.0, 0.0, 0.0])]);
        assert_eq!(Iota.apply(&[&a], &[]), vec![s(&[0.0, 1.0, 2.0, 3.0])]);
        assert_eq!(Eps.apply(&[&a], &[]), vec![s(&[2.0, 3.0])]);
        assert_eq!(Eps.apply(&[&Stream::bottom()], &[]), vec![Stream::bottom()]);
        assert_eq!(DivC(2.0).apply(&[&a], &[]), vec![s(&[0.5, 1.0, 1.5])]);
        assert_eq!(ConstK(3.0).apply(&[], &[&s(&[3.0])]), vec![s(&[3.0, 3.0])]);
    }

    #[test]
    fn running_sum_of_three() {
        let out = denote(&running_sum(), &interp(), &[s(&[1.0, 2.0, 3.0])], 10).unwrap();
        assert_eq!(out, vec![s(&[1.0, 3.0, 6.0])]);
    }

    #[test]
    fn iota_prepends_zero() {
        let out = denote(&gen("iota"), &interp(), &[s(&[5.0])], 10).unwrap();
        assert_eq!(out, vec![s(&[0.0, 5.0])]);
    }

    #[test]
    fn constant_net_grows_one_zero_per_sweep() {
        let cst = trace(&compose(&gen("iota"), &duplication(1)).unwrap(), 1).unwrap();
        let sol = solve(&cst, &interp(), &[], Budget::sweeps(7)).unwrap();
        assert_eq!(sol.outputs, vec![s(&[0.0; 7])]);
        assert!(!sol.converged);
        assert!(sol.progress.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn undriven_ports_stay_bottom() {
        let hole = trace(&duplication(1), 1).unwrap();
        let sol = solve(&hole, &interp(), &[], Budget::sweeps(5)).unwrap();
        assert_eq!(sol.outputs, vec![Stream::bottom()]);
        assert!(sol.converged);
    }

    #[test]
    fn errors_are_reported() {
        let net = gen("iota");
        assert_eq!(
            denote(&net, &Interpretation::new(), &[s(&[1.0])], 3).unwrap_err(),
            EvalError::MissingBinding("iota".into())
        );
        assert!(matches!(
            denote(&net, &interp(), &[], 3),
            Err(EvalError::ArityMismatch(_))
        ));
        let wrong = Interpretation::new().bind("iota", Plus);
        assert!(matches!(
            denote(&net, &wrong, &[s(&[1.0])], 3),
            Err(EvalError::ArityMismatch(_))
        ));
    }

    #[derive(Debug)]
    struct Reverse;
    impl StreamFn for Reverse {
        fn arity(&self) -> Arity {
            Arity::new(1, 1)
        }
        fn apply(&self, inputs: &[&Stream], _: &[&Stream]) -> Vec<Stream> {
            let mut v = inputs[0].0.clone();
            v.reverse();
            vec![Stream(v)]
        }
    }

    #[test]
    fn retracting_interpretation_is_caught() {
        // Reversing the growing running sum changes its first element.
        let sig = Signature::new().with("rev", 1, 1).with("iota", 1, 1).with("plus", 2, 1);
        let body = compose(
            &compose(
                &tensor(&identity(1), &generator(&sig, "iota").unwrap()),
                &generator(&sig, "plus").unwrap(),
            )
            .unwrap(),
            &duplication(1),
        )
        .unwrap();
        let loop_net = trace(&body, 1).unwrap();
        let net = compose(&loop_net, &generator(&sig, "rev").unwrap()).unwrap();
        let i = Interpretation::new().bind("rev", Reverse).bind("iota", Iota).bind("plus", Plus);
        let err = denote(&net, &i, &[s(&[1.0, 2.0, 3.0])], 10).unwrap_err();
        assert!(matches!(err, EvalError::MonotonicityViolation { .. }));
    }

    #[test]
    fn semantic_yanking() {
        let swap = NetFn {
            net: symmetry(1, 1),
            interp: interp(),
            budget: 10,
        };
        let x = s(&[4.0, 5.0]);
        let out = trace_apply(&swap, 1, &[&x], 10).unwrap();
        assert_eq!(out.outputs, vec![x]);
        assert!(out.converged);
    }

    #[test]
    fn trace_ignoring_feedback_is_restriction() {
        let f = NetFn {
            net: tensor(&gen("scale"), &gen("iota")),
            interp: interp(),
            budget: 10,
        };
        let x = s(&[1.0, 2.0]);
        let out = trace_apply(&f, 1, &[&x], 50).unwrap();
        assert_eq!(out.outputs, vec![s(&[2.0, 4.0])]);
    }

    #[test]
    fn traced_fn_matches_running_sum_net() {
        let body = compose(
            &compose(&tensor(&identity(1), &gen("iota")), &gen("plus")).unwrap(),
            &duplication(1),
        )
        .unwrap();
        let f = trace_fn(
            Arc::new(NetFn {
                net: body,
                interp: interp(),
                budget: 20,
            }),
            1,
            20,
        )
        .unwrap();
        let x = s(&[1.0, 1.0, 2.0, 3.0]);
        assert_eq!(f.arity(), Arity::new(1, 1));
        assert_eq!(
            f.apply(&[&x], &[]),
            denote(&running_sum(), &interp(), &[x.clone()], 20).unwrap()
        );
    }

    #[test]
    fn functoriality_examples() {
        let iota = gen("iota");
        let r = check_functoriality(
            &Functoriality::Compose(iota.clone(), iota.clone()),
            &interp(),
            &[vec![s(&[7.0])]],
            10,
        )
        .unwrap();
        assert!(r.holds());
        let both = denote(&compose(&iota, &iota).unwrap(), &interp(), &[s(&[7.0])], 10).unwrap();
        assert_eq!(both, vec![s(&[0.0, 0.0, 7.0])]);

        let sc = gen("scale");
        let r = check_functoriality(
            &Functoriality::Tensor(sc.clone(), sc.clone()),
            &interp(),
            &[vec![s(&[1.0]), s(&[2.0])]],
            10,
        )
        .unwrap();
        assert!(r.holds());

        let body = compose(
            &compose(&tensor(&identity(1), &gen("iota")), &gen("plus")).unwrap(),
            &duplication(1),
        )
        .unwrap();
        let r = check_functoriality(
            &Functoriality::Trace(body, 1),
            &interp(),
            &[vec![s(&[1.0, 2.0, 3.0])], vec![s(&[])]],
            30,
        )
        .unwrap();
        assert!(r.holds(), "{:?}", r.mismatches);
    }

    #[test]
    fn non_strict_producer_reaches_budget() {
        let out = denote(&gen("k"), &interp(), &[], 4).unwrap();
        assert_eq!(out, vec![s(&[7.0; 4])]);
    }

    #[test]
    fn schedule_puts_producers_first() {
        let chain = compose(&gen("scale"), &gen("iota")).unwrap();
        let reversed = chain.renumbered(&(0..chain.port_count()).collect::<Vec<_>>(), &[1, 0]);
        assert_eq!(schedule(&reversed), vec![1, 0]);
    }
}
