//! Infinitesimal-time semantics at desk scale.
//!
//! A hyperreal quantity is represented by its values along a decreasing
//! schedule of sampling periods; its standard part is the tolerance-checked
//! limit along that schedule ([`standard_part`]). An infinitesimal-time stream
//! is a stream over step indices `0..horizon` at one concrete period `δ`,
//! where `horizon = floor(tmax/δ)` plays the role of an unlimited hyperinteger.
//! Fixpoints are computed by letting the number of Kleene sweeps scale with the
//! horizon, so feedback loops through a delay fill the whole window instead of
//! stopping at any fixed finite depth.

use std::fmt;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahn::{solve, Budget, EvalError, Interpretation, Stream};
use crate::net::{Net, PortId};

/// Relative slack used to snap `x/δ` onto an integer before flooring, so that
/// `0.5/0.01` is step 50 despite representation error.
const SNAP: f64 = 1e-9;

/// `floor(x/δ)`, snapping quotients within representation error of an integer.
pub fn step_index(x: f64, delta: f64) -> usize {
    let q = x / delta;
    let r = q.round();
    if (q - r).abs() <= SNAP * r.abs().max(1.0) {
        r.max(0.0) as usize
    } else {
        q.floor().max(0.0) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NsError {
    #[error("invalid sampling period: {0}")]
    InvalidPeriod(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("time {x} is step {step}, past the {defined} defined steps")]
    OutOfDomain { x: f64, step: usize, defined: usize },
    #[error("feedback port {port} stalled at {defined} steps, expected {expected}")]
    NonProductive {
        port: PortId,
        defined: usize,
        expected: usize,
    },
    #[error("no standard part: last change {last_change} exceeds tolerance {tol}")]
    NonConvergent { last_change: f64, tol: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A sampling period `δ` together with the observation window `[0, tmax)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPeriod {
    delta: f64,
    tmax: f64,
    horizon: usize,
}

impl SamplingPeriod {
    pub fn new(delta: f64, tmax: f64) -> Result<Self, NsError> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(NsError::InvalidPeriod(format!("delta must be positive, got {delta}")));
        }
        if !(tmax > 0.0 && tmax.is_finite()) {
            return Err(NsError::InvalidPeriod(format!("tmax must be positive, got {tmax}")));
        }
        let horizon = step_index(tmax, delta);
        if horizon == 0 {
            return Err(NsError::InvalidPeriod(format!(
                "window {tmax} shorter than one period {delta}"
            )));
        }
        Ok(Self {
            delta,
            tmax,
            horizon,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn tmax(&self) -> f64 {
        self.tmax
    }

    /// Number of steps in the window.
    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

/// A δ-sampled stream defined on steps `0..len` with `len <= horizon`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ItStream {
    period: SamplingPeriod,
    values: Vec<f64>,
}

impl ItStream {
    pub fn new(period: SamplingPeriod, values: Vec<f64>) -> Result<Self, NsError> {
        if values.len() > period.horizon {
            return Err(NsError::OutOfDomain {
                x: values.len() as f64 * period.delta,
                step: values.len() - 1,
                defined: period.horizon,
            });
        }
        Ok(Self { period, values })
    }

    pub fn period(&self) -> SamplingPeriod {
        self.period
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_prefix_of(&self, other: &ItStream) -> bool {
        self.period == other.period && self.as_stream().is_prefix_of(&other.as_stream())
    }

    pub fn as_stream(&self) -> Stream {
        Stream(self.values.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Continuity {
    Continuous,
    Piecewise,
    Unknown,
}

/// A continuous-time stream, total on its window.
#[derive(Clone)]
pub struct CtFn {
    name: String,
    continuity: Continuity,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CtFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CtFn({}, {:?})", self.name, self.continuity)
    }
}

impl CtFn {
    pub fn new(
        name: impl Into<String>,
        continuity: Continuity,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CtFn {
            name: name.into(),
            continuity,
            f: Arc::new(f),
        }
    }

    pub fn continuous(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(name, Continuity::Continuous, f)
    }

    /// Piecewise-linear interpolation of `(t, value)` samples sorted by `t`,
    /// held constant outside the sampled range.
    pub fn interpolated(name: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self, NsError> {
        if points.is_empty() {
            return Err(NsError::InvalidPeriod("no samples to interpolate".into()));
        }
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(NsError::InvalidPeriod("sample times must increase".into()));
        }
        let f = move |t: f64| {
            let i = points.partition_point(|&(ti, _)| ti <= t);
            if i == 0 {
                points[0].1
            } else if i == points.len() {
                points[points.len() - 1].1
            } else {
                let (t0, v0) = points[i - 1];
                let (t1, v1) = points[i];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        };
        Ok(Self::new(name, Continuity::Continuous, f))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

/// Strictly decreasing positive sampling periods plus a convergence tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaSchedule {
    deltas: Vec<f64>,
    tol: f64,
}

impl DeltaSchedule {
    pub fn new(deltas: Vec<f64>, tol: f64) -> Result<Self, NsError> {
        if deltas.len() < 3 {
            return Err(NsError::InvalidSchedule(format!(
                "need at least 3 periods, got {}",
                deltas.len()
            )));
        }
        if deltas.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(NsError::InvalidSchedule("periods must be positive".into()));
        }
        if deltas.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(NsError::InvalidSchedule("periods must strictly decrease".into()));
        }
        if !(tol > 0.0) {
            return Err(NsError::InvalidSchedule(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self { deltas, tol })
    }

    /// `first, first/2, ..., first/2^halvings`.
    pub fn halving(first: f64, halvings: usize, tol: f64) -> Result<Self, NsError> {
        Self::new(
            (0..=halvings).map(|j| first / f64::powi(2.0, j as i32)).collect(),
            tol,
        )
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Appends further, smaller periods.
    pub fn refined(&self, extra: &[f64]) -> Result<Self, NsError> {
        let mut deltas = self.deltas.clone();
        deltas.extend_from_slice(extra);
        Self::new(deltas, self.tol)
    }
}

impl Default for DeltaSchedule {
    /// `1e-2` halved four times, tolerance `1e-6`.
    fn default() -> Self {
        Self::halving(1e-2, 4, 1e-6).expect("valid default schedule")
    }
}

/// How the error of a δ-family behaves as δ shrinks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorModel {
    /// Use the raw values.
    Plain,
    /// Error is `c·δ + o(δ)`: one Richardson step removes the linear term.
    Linear,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum StandardPart {
    Converged { value: f64, last_change: f64 },
    NonConvergent { last_change: f64, values: Vec<f64> },
}

impl StandardPart {
    pub fn value(&self) -> Option<f64> {
        match self {
            StandardPart::Converged { value, .. } => Some(*value),
            StandardPart::NonConvergent { .. } => None,
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, StandardPart::Converged { .. })
    }

    fn into_result(self, tol: f64) -> Result<f64, NsError> {
        match self {
            StandardPart::Converged { value, .. } => Ok(value),
            StandardPart::NonConvergent { last_change, .. } => {
                Err(NsError::NonConvergent { last_change, tol })
            }
        }
    }
}

/// Limit estimate from values `g(δ_j)` already computed along `deltas`.
pub fn standard_part_of(values: &[f64], deltas: &[f64], tol: f64, model: ErrorModel) -> StandardPart {
    assert_eq!(values.len(), deltas.len());
    let seq: Vec<f64> = match model {
        ErrorModel::Plain => values.to_vec(),
        ErrorModel::Linear => values
            .windows(2)
            .zip(deltas.windows(2))
            .map(|(v, d)| (d[0] * v[1] - d[1] * v[0]) / (d[0] - d[1]))
            .collect(),
    };
    let last_change = match seq.as_slice() {
        [.., a, b] => (b - a).abs(),
        _ => f64::INFINITY,
    };
    let finite = seq.iter().all(|v| v.is_finite());
    match (finite && last_change <= tol, seq.last()) {
        (true, Some(&value)) => StandardPart::Converged { value, last_change },
        _ => StandardPart::NonConvergent {
            last_change: if finite { last_change } else { f64::INFINITY },
            values: values.to_vec(),
        },
    }
}

/// Standard part of the δ-family `g` along the schedule.
pub fn standard_part(g: impl Fn(f64) -> f64, sched: &DeltaSchedule, model: ErrorModel) -> StandardPart {
    let values: Vec<f64> = sched.deltas.iter().map(|&d| g(d)).collect();
    standard_part_of(&values, &sched.deltas, sched.tol, model)
}

/// Sampling: `values[k] = f(k·δ)` for every step of the window.
pub fn sample(f: &CtFn, period: SamplingPeriod) -> ItStream {
    ItStream {
        period,
        values: (0..period.horizon)
            .map(|k| f.eval(k as f64 * period.delta))
            .collect(),
    }
}

/// Standardization at one period: the value at step `floor(x/δ)`.
pub fn standardize(s: &ItStream, x: f64) -> Result<f64, NsError> {
    let step = step_index(x, s.period.delta);
    if x < 0.0 || step >= s.values.len() {
        return Err(NsError::OutOfDomain {
            x,
            step,
            defined: s.values.len(),
        });
    }
    Ok(s.values[step])
}

/// Result of an infinitesimal-time evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ItOutcome {
    pub outputs: Vec<ItStream>,
    pub sweeps: usize,
    pub converged: bool,
}

fn to_streams(inputs: &[ItStream]) -> Vec<Stream> {
    inputs.iter().map(ItStream::as_stream).collect()
}

fn wrap(period: SamplingPeriod, streams: Vec<Stream>) -> Vec<ItStream> {
    streams
        .into_iter()
        .map(|s| ItStream {
            period,
            values: s.0,
        })
        .collect()
}

/// Evaluation with an explicit, horizon-independent sweep budget. This is
/// ordinary ω-iteration truncated at `sweeps`, kept to contrast with
/// [`denote_it`].
pub fn denote_it_budget(
    net: &Net,
    interp: &Interpretation,
    inputs: &[ItStream],
    period: SamplingPeriod,
    sweeps: usize,
) -> Result<ItOutcome, NsError> {
    let sol = solve(
        net,
        interp,
        &to_streams(inputs),
        Budget {
            sweeps,
            cap: Some(period.horizon),
        },
    )?;
    Ok(ItOutcome {
        outputs: wrap(period, sol.outputs),
        sweeps: sol.sweeps,
        converged: sol.converged,
    })
}

/// Hyperfinite fixpoint evaluation: up to `horizon + |ports| + 1` sweeps with
/// every stream truncated to the window. Fails with `NonProductive` when a
/// port on a feedback cycle stalls short of what its external inputs allow.
pub fn denote_it(
    net: &Net,
    interp: &Interpretation,
    inputs: &[ItStream],
    period: SamplingPeriod,
) -> Result<ItOutcome, NsError> {
    let sol = solve(
        net,
        interp,
        &to_streams(inputs),
        Budget {
            sweeps: period.horizon + net.port_count() + 1,
            cap: Some(period.horizon),
        },
    )?;
    check_productive(net, &sol.ports, period.horizon)?;
    Ok(ItOutcome {
        outputs: wrap(period, sol.outputs),
        sweeps: sol.sweeps,
        converged: sol.converged,
    })
}

/// Every port on a feedback cycle must be as long as the shortest port that
/// feeds the cycle from outside (or the full horizon for closed cycles).
fn check_productive(net: &Net, ports: &[Stream], horizon: usize) -> Result<(), NsError> {
    let mut g: DiGraph<PortId, ()> = DiGraph::new();
    let nodes: Vec<_> = (0..net.port_count()).map(|p| g.add_node(p)).collect();
    for o in net.operators() {
        for &i in &o.inputs {
            for &j in &o.outputs {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    for scc in tarjan_scc(&g) {
        let members: Vec<PortId> = scc.iter().map(|&n| g[n]).collect();
        let cyclic = members.len() > 1 || g.contains_edge(scc[0], scc[0]);
        if !cyclic {
            continue;
        }
        let inside = |p: PortId| members.contains(&p);
        let expected = net
            .operators()
            .iter()
            .filter(|o| o.outputs.iter().any(|&q| inside(q)))
            .flat_map(|o| o.inputs.iter().copied())
            .filter(|&p| !inside(p))
            .map(|p| ports[p].len())
            .fold(horizon, usize::min);
        if let Some(&port) = members.iter().filter(|&&p| ports[p].len() < expected).min() {
            return Err(NsError::NonProductive {
                port,
                defined: ports[port].len(),
                expected,
            });
        }
    }
    Ok(())
}

/// Agreement of one output at one probe across the schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub output: usize,
    pub x: f64,
    /// Standardized value per schedule entry, `None` when out of domain.
    pub values: Vec<Option<f64>>,
    /// `max - min` of the values; infinite if any is undefined.
    pub spread: f64,
    pub standard_part: StandardPart,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub deltas: Vec<f64>,
    pub tol: f64,
    pub probes: Vec<ProbeReport>,
    pub max_spread: f64,
}

impl IndependenceReport {
    pub fn agrees(&self) -> bool {
        self.max_spread <= self.tol
    }
}

/// [`denote_it`] at every period of the schedule, in parallel, with inputs
/// sampled at that period.
pub fn run_schedule(
    net: &Net,
    interp_at: impl Fn(f64) -> Interpretation + Sync,
    inputs: &[CtFn],
    tmax: f64,
    sched: &DeltaSchedule,
) -> Result<Vec<ItOutcome>, NsError> {
    sched
        .deltas
        .par_iter()
        .map(|&delta| {
            let period = SamplingPeriod::new(delta, tmax)?;
            let ins: Vec<ItStream> = inputs.iter().map(|f| sample(f, period)).collect();
            denote_it(net, &interp_at(delta), &ins, period)
        })
        .collect()
}

/// Standardizes every output of every run at each probe and reports the
/// spread across the schedule.
pub fn independence_report(
    runs: &[ItOutcome],
    sched: &DeltaSchedule,
    probes: &[f64],
    model: ErrorModel,
) -> IndependenceReport {
    let outputs = runs.first().map_or(0, |r| r.outputs.len());
    let mut reports = Vec::new();
    for output in 0..outputs {
        for &x in probes {
            let values: Vec<Option<f64>> = runs
                .iter()
                .map(|r| standardize(&r.outputs[output], x).ok())
                .collect();
            let defined: Option<Vec<f64>> = values.iter().copied().collect();
            let (spread, standard_part) = match defined {
                Some(vs) => {
                    let lo = vs.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = vs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    (hi - lo, standard_part_of(&vs, &sched.deltas, sched.tol, model))
                }
                None => (
                    f64::INFINITY,
                    StandardPart::NonConvergent {
                        last_change: f64::INFINITY,
                        values: Vec::new(),
                    },
                ),
            };
            reports.push(ProbeReport {
                output,
                x,
                values,
                spread,
                standard_part,
            });
        }
    }
    let max_spread = reports.iter().map(|r| r.spread).fold(0.0, f64::max);
    IndependenceReport {
        deltas: sched.deltas.clone(),
        tol: sched.tol,
        probes: reports,
        max_spread,
    }
}

/// [`run_schedule`] followed by [`independence_report`].
pub fn delta_independence(
    net: &Net,
    interp_at: impl Fn(f64) -> Interpretation + Sync,
    inputs: &[CtFn],
    tmax: f64,
    sched: &DeltaSchedule,
    probes: &[f64],
    model: ErrorModel,
) -> Result<IndependenceReport, NsError> {
    let runs = run_schedule(net, interp_at, inputs, tmax, sched)?;
    Ok(independence_report(&runs, sched, probes, model))
}

/// Derivative at `x`: the difference quotient must have the same standard
/// part for positive and negative periods. Each side is extrapolated under a
/// linear error model.
pub fn derivative_at(f: impl Fn(f64) -> f64, x: f64, sched: &DeltaSchedule) -> Result<f64, NsError> {
    let fx = f(x);
    let forward = standard_part(|d| (f(x + d) - fx) / d, sched, ErrorModel::Linear).into_result(sched.tol)?;
    let backward = standard_part(|d| (f(x - d) - fx) / -d, sched, ErrorModel::Linear).into_result(sched.tol)?;
    let gap = (forward - backward).abs();
    if gap > sched.tol {
        return Err(NsError::NonConvergent {
            last_change: gap,
            tol: sched.tol,
        });
    }
    Ok(0.5 * (forward + backward))
}

/// Two-infinitesimal form `(f(x+δ) - f(x+ε)) / (δ - ε)` with `ε = -δ`.
pub fn derivative_symmetric(f: impl Fn(f64) -> f64, x: f64, sched: &DeltaSchedule) -> Result<f64, NsError> {
    standard_part(|d| (f(x + d) - f(x - d)) / (2.0 * d), sched, ErrorModel::Plain).into_result(sched.tol)
}

/// Compensated (Neumaier) sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Left-endpoint Riemann sum with `n = ceil((b-a)/δ)` cells, for one period.
pub fn riemann_sum(f: &impl Fn(f64) -> f64, a: f64, b: f64, delta: f64) -> f64 {
    let width = b - a;
    let q = width / delta;
    let n = (if (q - q.round()).abs() <= SNAP * q.abs().max(1.0) {
        q.round()
    } else {
        q.ceil()
    })
    .max(1.0) as usize;
    let total = compensated_sum((0..n).map(|k| f(a + k as f64 * width / n as f64)));
    width * total / n as f64
}

/// Integral over `[a, b]` as the standard part of Riemann sums.
pub fn integral(f: impl Fn(f64) -> f64, a: f64, b: f64, sched: &DeltaSchedule) -> Result<f64, NsError> {
    standard_part(|d| riemann_sum(&f, a, b, d), sched, ErrorModel::Linear).into_result(sched.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdnets::{build, std_interpretation, StdNet};

    fn period(d: f64, t: f64) -> SamplingPeriod {
        SamplingPeriod::new(d, t).unwrap()
    }

    #[test]
    fn period_validation() {
        assert_eq!(period(0.25, 1.0).horizon(), 4);
        assert_eq!(period(1e-3, 1.0).horizon(), 1000);
        assert_eq!(period(0.01, 0.5).horizon(), 50);
        assert!(SamplingPeriod::new(0.0, 1.0).is_err());
        assert!(SamplingPeriod::new(2.0, 1.0).is_err());
        assert!(ItStream::new(period(0.5, 1.0), vec![0.0; 3]).is_err());
    }

    #[test]
    fn sampling_examples() {
        let p = period(0.25, 1.0);
        let zero = sample(&CtFn::continuous("0", |_| 0.0), p);
        assert_eq!(zero.values(), &[0.0; 4]);
        let id = sample(&CtFn::continuous("t", |t| t), p);
        assert_eq!(id.values(), &[0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn standardize_examples() {
        let s = sample(&CtFn::continuous("t", |t| t), period(0.25, 1.0));
        assert_eq!(standardize(&s, 0.6).unwrap(), 0.5);
        assert_eq!(standardize(&s, 0.0).unwrap(), 0.0);
        assert!(matches!(
            standardize(&s, 1.0),
            Err(NsError::OutOfDomain { step: 4, defined: 4, .. })
        ));
        assert!(standardize(&s, -0.1).is_err());
    }

    #[test]
    fn standard_part_examples() {
        let sched = DeltaSchedule::default();
        let affine = standard_part(|d| 3.0 + d, &sched, ErrorModel::Linear);
        assert!((affine.value().unwrap() - 3.0).abs() <= 1e-12);
        let sinc = standard_part(|d| d.sin() / d, &sched, ErrorModel::Plain);
        assert!((sinc.value().unwrap() - 1.0).abs() <= 1e-6);
        assert!(!standard_part(|d| 1.0 / d, &sched, ErrorModel::Plain).is_converged());
        assert!(!standard_part(|d| 1.0 / d, &sched, ErrorModel::Linear).is_converged());
    }

    #[test]
    fn schedule_validation() {
        assert!(DeltaSchedule::new(vec![0.1, 0.05], 1e-3).is_err());
        assert!(DeltaSchedule::new(vec![0.1, 0.2, 0.05], 1e-3).is_err());
        assert!(DeltaSchedule::new(vec![0.1, 0.05, 0.01], 0.0).is_err());
        assert_eq!(DeltaSchedule::default().deltas().len(), 5);
    }

    #[test]
    fn calculus_oracles() {
        let sched = DeltaSchedule::default();
        assert!((derivative_at(f64::sin, 0.0, &sched).unwrap() - 1.0).abs() <= 1e-6);
        assert!((derivative_at(f64::exp, 0.3, &sched).unwrap() - 0.3f64.exp()).abs() <= 1e-6);
        assert!((derivative_symmetric(f64::sin, 0.0, &sched).unwrap() - 1.0).abs() <= 1e-6);
        for n in [1usize, 3, 7, 10, 49, 1000] {
            assert_eq!(riemann_sum(&|_| 1.0, 0.0, 1.0, 1.0 / n as f64), 1.0);
        }
        assert_eq!(integral(|_| 1.0, 0.0, 1.0, &sched).unwrap(), 1.0);
        let pi = std::f64::consts::PI;
        assert!((integral(f64::sin, 0.0, pi, &sched).unwrap() - 2.0).abs() <= 1e-6);
    }

    #[test]
    fn kink_has_no_derivative() {
        let sched = DeltaSchedule::default();
        let err = derivative_at(|t| (t - 0.5).abs(), 0.5, &sched).unwrap_err();
        assert!(matches!(err, NsError::NonConvergent { .. }));
        assert!((derivative_at(|t| (t - 0.5).abs(), 0.25, &sched).unwrap() + 1.0).abs() <= 1e-9);
    }

    #[test]
    fn constant_net_fills_horizon_only_with_enough_sweeps() {
        let p = period(1e-3, 1.0);
        let net = build(StdNet::Constant);
        let interp = std_interpretation(p.delta());
        let full = denote_it(&net, &interp, &[], p).unwrap();
        assert_eq!(full.outputs[0].values(), vec![0.0; 1000].as_slice());
        let short = denote_it_budget(&net, &interp, &[], p, 10).unwrap();
        assert_eq!(short.outputs[0].values(), &[0.0; 10]);
    }

    #[test]
    fn undelayed_loops_are_non_productive() {
        let sig = crate::stdnets::std_signature();
        let g = |s: &str| crate::net::generator(&sig, s).unwrap();
        // y = x + y
        let body = crate::net::compose(&g("plus"), &crate::net::duplication(1)).unwrap();
        let net = crate::net::trace(&body, 1).unwrap();
        let p = period(0.1, 1.0);
        let x = sample(&CtFn::continuous("1", |_| 1.0), p);
        let err = denote_it(&net, &std_interpretation(0.1), &[x], p).unwrap_err();
        assert!(matches!(err, NsError::NonProductive { defined: 0, expected: 10, .. }));
        // y = iota(eps(y)) stalls after one step.
        let body = crate::net::compose(
            &crate::net::compose(&g("eps"), &g("iota")).unwrap(),
            &crate::net::duplication(1),
        )
        .unwrap();
        let net = crate::net::trace(&body, 1).unwrap();
        let err = denote_it(&net, &std_interpretation(0.1), &[], p).unwrap_err();
        assert!(matches!(err, NsError::NonProductive { defined: 1, .. }));
    }

    #[test]
    fn differentiation_net_shortens_by_one_without_error() {
        let p = period(0.1, 1.0);
        let x = sample(&CtFn::continuous("t2", |t| t * t), p);
        let out = denote_it(&build(StdNet::Differentiation), &std_interpretation(0.1), &[x], p).unwrap();
        assert_eq!(out.outputs[0].len(), 9);
    }

    #[test]
    fn interpolation() {
        let f = CtFn::interpolated("pts", vec![(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]).unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(1.5), 1.0);
        assert_eq!(f.eval(-1.0), 0.0);
        assert_eq!(f.eval(5.0), 0.0);
        assert!(CtFn::interpolated("bad", vec![(1.0, 0.0), (0.0, 1.0)]).is_err());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let v = vec![1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(v), 2.0);
    }
}
