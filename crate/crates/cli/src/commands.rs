//! Subcommand bodies. They take file contents that the binary has already
//! read and return what it should print or write; none of them touch the
//! filesystem.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kpn_core::kahn::{solve, Budget, Interpretation, Stream};
use kpn_core::laws::{check_random, law_interpretation, GenParams, Law, LawSummary};
use kpn_core::nstime::{
    independence_report, run_schedule, CtFn, ErrorModel, StandardPart,
};
use kpn_core::rewrite::normalize_with;
use kpn_core::stdnets::std_interpretation;
use kpn_core::{find_iso, normalize, Net};
use serde_json::{json, Value};

use crate::config::{InputSource, SimConfig};
use crate::csvio;
use crate::dsl::{self, NetDecl, NetDocument};
use crate::error::CliError;

/// What a command produced. `body` goes to `--out` or stdout; `files` are
/// named auxiliary outputs such as per-period traces.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub body: String,
    pub files: Vec<(String, String)>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            code: 0,
            body,
            files: Vec::new(),
        }
    }

    fn status(pass: bool, body: String) -> Self {
        Outcome {
            code: if pass { 0 } else { 1 },
            body,
            files: Vec::new(),
        }
    }
}

fn json_body(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Standard symbols (with `scale`/`divc` constant `c`) plus the symbols used
/// by generated nets.
pub fn cli_interpretation(c: f64) -> Interpretation {
    let mut interp = std_interpretation(c);
    let extra = law_interpretation();
    for name in ["f", "g", "h", "d", "k"] {
        if let Some(f) = extra.get(name) {
            interp = interp.bind_arc(name, f.clone());
        }
    }
    interp
}

pub fn load(file: &str, text: &str) -> Result<NetDocument, CliError> {
    dsl::parse(text).map_err(|source| CliError::Dsl {
        file: file.to_string(),
        source,
    })
}

fn select<'a>(doc: &'a NetDocument, name: &str) -> Result<&'a NetDecl, CliError> {
    doc.net(name).ok_or_else(|| CliError::UnknownNet(name.to_string()))
}

pub fn check(file: &str, text: &str, as_json: bool) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let sig = doc.signature();
    let mut all_valid = true;
    let mut body = String::new();
    let mut reports = Vec::new();
    for decl in &doc.nets {
        let net = decl.to_net();
        let report = net.validate(&sig);
        all_valid &= report.is_valid();
        let undriven: Vec<&str> = report
            .notes
            .iter()
            .map(|kpn_core::net::Note::Undriven(p)| decl.ports[*p].as_str())
            .collect();
        let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            body,
            "{}: {}, {} -> {}, {} ports, {} operators",
            decl.name,
            if report.is_valid() { "valid" } else { "invalid" },
            decl.dom,
            decl.cod,
            decl.ports.len(),
            decl.operators.len()
        );
        for v in &violations {
            let _ = writeln!(body, "  violation: {v}");
        }
        for p in &undriven {
            let _ = writeln!(body, "  note: port {p} is undriven");
        }
        reports.push(json!({
            "name": decl.name,
            "valid": report.is_valid(),
            "violations": violations,
            "undriven": undriven,
        }));
    }
    if as_json {
        body = json_body(json!({ "nets": reports }));
    }
    Ok(Outcome::status(all_valid, body))
}

pub fn normalize_doc(file: &str, text: &str, only: Option<&str>, as_json: bool) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let chosen: Vec<&NetDecl> = match only {
        Some(name) => vec![select(&doc, name)?],
        None => doc.nets.iter().collect(),
    };
    let mut out = NetDocument {
        signature: doc.signature.clone(),
        nets: Vec::new(),
    };
    let mut steps = Vec::new();
    for decl in chosen {
        let n = normalize_with(&decl.to_net(), |_| 0);
        steps.push(json!({ "name": decl.name, "steps": n.steps.len() }));
        out.nets.push(NetDecl::from_net(decl.name.clone(), n.net.as_net()));
    }
    let body = if as_json {
        json_body(json!({ "document": out, "rewrites": steps }))
    } else {
        dsl::print(&out)
    };
    Ok(Outcome::ok(body))
}

pub fn iso(file: &str, text: &str, left: &str, right: &str, as_json: bool) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let (l, r) = (select(&doc, left)?, select(&doc, right)?);
    let witness = find_iso(&l.to_net(), &r.to_net());
    let body = match (&witness, as_json) {
        (Some(w), true) => {
            let ports: BTreeMap<&str, &str> = w
                .port_map
                .iter()
                .enumerate()
                .map(|(p, &q)| (l.ports[p].as_str(), r.ports[q].as_str()))
                .collect();
            let ops: BTreeMap<&str, &str> = w
                .op_map
                .iter()
                .enumerate()
                .map(|(x, &y)| (l.operators[x].id.as_str(), r.operators[y].id.as_str()))
                .collect();
            json_body(json!({ "isomorphic": true, "ports": ports, "operators": ops }))
        }
        (None, true) => json_body(json!({ "isomorphic": false })),
        (Some(w), false) => {
            let mut s = format!("{left} and {right} are isomorphic\n");
            for (p, &q) in w.port_map.iter().enumerate() {
                let _ = writeln!(s, "port {} -> {}", l.ports[p], r.ports[q]);
            }
            for (x, &y) in w.op_map.iter().enumerate() {
                let _ = writeln!(s, "op {} -> {}", l.operators[x].id, r.operators[y].id);
            }
            s
        }
        (None, false) => format!("{left} and {right} are not isomorphic\n"),
    };
    Ok(Outcome::status(witness.is_some(), body))
}

pub fn se_equiv(file: &str, text: &str, left: &str, right: &str, as_json: bool) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let (l, r) = (select(&doc, left)?, select(&doc, right)?);
    let (ln, rn) = (l.to_net(), r.to_net());
    let equivalent = kpn_core::se_equivalent(&ln, &rn)?.is_some();
    let body = if as_json {
        json_body(json!({
            "se_equivalent": equivalent,
            "left_normal_form": NetDecl::from_net(left, normalize(&ln).as_net()),
            "right_normal_form": NetDecl::from_net(right, normalize(&rn).as_net()),
        }))
    } else if equivalent {
        format!("{left} and {right} are se-equivalent\n")
    } else {
        format!("{left} and {right} are not se-equivalent\n")
    };
    Ok(Outcome::status(equivalent, body))
}

fn arity_check(decl: &NetDecl, given: usize) -> Result<(), CliError> {
    if given != decl.dom {
        return Err(CliError::Usage(format!(
            "net `{}` has {} inputs, {given} given",
            decl.name, decl.dom
        )));
    }
    Ok(())
}

pub fn eval(
    file: &str,
    text: &str,
    name: &str,
    inputs: &[Stream],
    budget: usize,
    constant: f64,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let decl = select(&doc, name)?;
    arity_check(decl, inputs.len())?;
    let sol = solve(&decl.to_net(), &cli_interpretation(constant), inputs, Budget::sweeps(budget))?;
    let body = if as_json {
        json_body(json!({
            "outputs": sol.outputs.iter().map(|s| &s.0).collect::<Vec<_>>(),
            "sweeps": sol.sweeps,
            "converged": sol.converged,
        }))
    } else {
        csvio::write_outputs(&sol.outputs)
    };
    Ok(Outcome::ok(body))
}

/// Builds the continuous inputs of a simulation; CSV sources come from
/// `loaded`, keyed by input index.
pub fn sim_inputs(
    cfg: &SimConfig,
    dom: usize,
    loaded: &BTreeMap<usize, Vec<(f64, f64)>>,
) -> Result<Vec<CtFn>, CliError> {
    (0..dom)
        .map(|k| match cfg.inputs.get(&k) {
            Some(InputSource::Expr { text, expr }) => {
                let e = expr.clone();
                Ok(CtFn::continuous(text.clone(), move |t| e.eval(t)))
            }
            Some(InputSource::Csv(path)) => {
                let points = loaded.get(&k).cloned().ok_or_else(|| {
                    CliError::Usage(format!("samples for input.{k} ({}) not loaded", path.display()))
                })?;
                Ok(CtFn::interpolated(path.display().to_string(), points)?)
            }
            None => Err(CliError::Usage(format!("config has no `input.{k}`"))),
        })
        .collect()
}

fn trace_csv(outputs: &[kpn_core::nstime::ItStream]) -> String {
    let rows: Vec<(usize, f64, f64)> = outputs
        .iter()
        .enumerate()
        .flat_map(|(o, s)| {
            let d = s.period().delta();
            s.values().iter().enumerate().map(move |(k, &v)| (o, k as f64 * d, v))
        })
        .collect();
    if outputs.len() == 1 {
        let pts: Vec<(f64, f64)> = rows.iter().map(|&(_, t, v)| (t, v)).collect();
        csvio::write_continuous(&pts)
    } else {
        csvio::write_continuous_outputs(&rows)
    }
}

/// Runs the net at every period of the schedule and reports the standard
/// part at each probe. Exit code 1 when the probes disagree across the
/// schedule beyond the tolerance or a standard part fails to converge.
pub fn simulate(
    file: &str,
    text: &str,
    name: &str,
    cfg: &SimConfig,
    loaded: &BTreeMap<usize, Vec<(f64, f64)>>,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let doc = load(file, text)?;
    let decl = select(&doc, name)?;
    let net: Net = decl.to_net();
    let inputs = sim_inputs(cfg, decl.dom, loaded)?;
    let sched = cfg.delta_schedule().map_err(|source| CliError::Config {
        file: "config".into(),
        source,
    })?;
    let runs = run_schedule(&net, cli_interpretation, &inputs, cfg.tmax, &sched)?;
    let report = independence_report(&runs, &sched, &cfg.probes, ErrorModel::Linear);
    let converged = report.probes.iter().all(|p| p.standard_part.is_converged());
    let pass = report.agrees() && converged;
    let files = runs
        .iter()
        .enumerate()
        .map(|(j, r)| (format!("trace_{j}.csv"), trace_csv(&r.outputs)))
        .collect();
    let body = if as_json {
        json_body(json!({ "agrees": report.agrees(), "converged": converged, "report": report }))
    } else {
        let value = |sp: &StandardPart| sp.value().unwrap_or(f64::NAN);
        if decl.cod == 1 {
            let pts: Vec<(f64, f64)> = report.probes.iter().map(|p| (p.x, value(&p.standard_part))).collect();
            csvio::write_continuous(&pts)
        } else {
            let rows: Vec<(usize, f64, f64)> = report
                .probes
                .iter()
                .map(|p| (p.output, p.x, value(&p.standard_part)))
                .collect();
            csvio::write_continuous_outputs(&rows)
        }
    };
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        body,
        files,
    })
}

pub fn laws(seed: u64, count: usize, axiom: Option<&str>, as_json: bool) -> Result<Outcome, CliError> {
    let chosen: Vec<Law> = match axiom {
        Some(name) => vec![name.parse()?],
        None => Law::ALL.to_vec(),
    };
    let params = GenParams::new(seed);
    let summaries: Vec<LawSummary> = chosen
        .into_iter()
        .map(|law| check_random(law, &params, count))
        .collect::<Result<_, _>>()?;
    let pass = summaries.iter().all(LawSummary::as_expected);
    let body = if as_json {
        json_body(json!({ "seed": seed, "count": count, "laws": summaries }))
    } else {
        let mut s = String::new();
        for l in &summaries {
            let _ = writeln!(
                s,
                "{:<28} {:<4} {:>5}/{:<5} {}",
                l.law.name(),
                format!("{:?}", l.category),
                l.held,
                l.checked,
                match (l.as_expected(), l.expected) {
                    (true, true) => "ok",
                    (true, false) => "ok (fails as expected)",
                    (false, _) => "FAIL",
                }
            );
        }
        s
    };
    Ok(Outcome::status(pass, body))
}
