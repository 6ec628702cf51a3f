//! The `.net` text format.
//!
//! ```text
//! # comment
//! sig alpha 2 1
//! net main : 2 -> 1
//! ports a b c
//! op x alpha (a b) -> (c)
//! in a b
//! out c
//! ```
//!
//! One item per line. `sig` lines may appear anywhere; every other item
//! belongs to the most recent `net` header. Ports are numbered in the order of
//! the `ports` lines.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use kpn_core::net::PortId;
use kpn_core::{Net, Operator, Signature};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DslErrorKind {
    SyntaxError,
    UnknownSymbol,
    UndeclaredPort,
    ArityMismatch,
}

impl DslErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            DslErrorKind::SyntaxError => "syntax_error",
            DslErrorKind::UnknownSymbol => "unknown_symbol",
            DslErrorKind::UndeclaredPort => "undeclared_port",
            DslErrorKind::ArityMismatch => "arity_mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigDecl {
    pub name: String,
    pub inputs: usize,
    pub outputs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpDecl {
    pub id: String,
    pub symbol: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetDecl {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub ports: Vec<String>,
    pub operators: Vec<OpDecl>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetDocument {
    pub signature: Vec<SigDecl>,
    pub nets: Vec<NetDecl>,
}

impl NetDocument {
    pub fn signature(&self) -> Signature {
        self.signature
            .iter()
            .fold(Signature::new(), |s, d| s.with(d.name.clone(), d.inputs, d.outputs))
    }

    pub fn net(&self, name: &str) -> Option<&NetDecl> {
        self.nets.iter().find(|n| n.name == name)
    }
}

impl NetDecl {
    pub fn to_net(&self) -> Net {
        let index: HashMap<&str, PortId> = self
            .ports
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let ids = |names: &[String]| names.iter().map(|p| index[p.as_str()]).collect::<Vec<_>>();
        Net::from_parts(
            self.ports.len(),
            self.operators
                .iter()
                .map(|o| Operator::new(o.symbol.clone(), ids(&o.inputs), ids(&o.outputs)))
                .collect(),
            ids(&self.inputs),
            ids(&self.outputs),
        )
    }

    /// Declaration of `net` with ports named `p0, p1, ...` and operators
    /// `x0, x1, ...`.
    pub fn from_net(name: impl Into<String>, net: &Net) -> Self {
        let port = |p: &PortId| format!("p{p}");
        NetDecl {
            name: name.into(),
            dom: net.dom(),
            cod: net.cod(),
            ports: (0..net.port_count()).map(|p| port(&p)).collect(),
            operators: net
                .operators()
                .iter()
                .enumerate()
                .map(|(i, o)| OpDecl {
                    id: format!("x{i}"),
                    symbol: o.label.clone(),
                    inputs: o.inputs.iter().map(port).collect(),
                    outputs: o.outputs.iter().map(port).collect(),
                })
                .collect(),
            inputs: net.input_ports().iter().map(port).collect(),
            outputs: net.output_ports().iter().map(port).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Arrow,
    Colon,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Colon => f.write_str("`:`"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

fn err(kind: DslErrorKind, line: usize, column: usize, message: impl Into<String>) -> DslError {
    DslError {
        kind,
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            c if is_word_char(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), col));
            }
            c => return Err(err(DslErrorKind::SyntaxError, line, col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Token cursor over one line.
struct Line {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

impl Line {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn syntax(&self, message: impl Into<String>) -> DslError {
        err(DslErrorKind::SyntaxError, self.line, self.col(), message)
    }

    fn word(&mut self, what: &str) -> Result<(String, usize), DslError> {
        match self.toks.get(self.pos) {
            Some((Tok::Word(w), c)) => {
                self.pos += 1;
                Ok((w.clone(), *c))
            }
            Some((t, _)) => Err(self.syntax(format!("expected {what}, found {t}"))),
            None => Err(self.syntax(format!("expected {what}, found end of line"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, DslError> {
        let col = self.col();
        let (w, _) = self.word(what)?;
        w.parse()
            .map_err(|_| err(DslErrorKind::SyntaxError, self.line, col, format!("expected {what}, found `{w}`")))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        match self.toks.get(self.pos) {
            Some((t, _)) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some((t, _)) => Err(self.syntax(format!("expected {tok}, found {t}"))),
            None => Err(self.syntax(format!("expected {tok}, found end of line"))),
        }
    }

    /// Words up to the end of the line or the given closing token.
    fn words_until(&mut self, close: Option<Tok>) -> Result<Vec<(String, usize)>, DslError> {
        let mut out = Vec::new();
        loop {
            match self.toks.get(self.pos) {
                None if close.is_none() => return Ok(out),
                Some((t, _)) if Some(t) == close.as_ref() => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some((Tok::Word(_), _)) => out.push(self.word("port")?),
                Some((t, _)) => return Err(self.syntax(format!("unexpected {t}"))),
                None => return Err(self.syntax(format!("expected {}, found end of line", close.unwrap()))),
            }
        }
    }

    fn finish(&self) -> Result<(), DslError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((t, _)) => Err(self.syntax(format!("unexpected {t}"))),
        }
    }
}

type Named = (String, usize);

struct RawOp {
    id: Named,
    symbol: Named,
    inputs: Vec<Named>,
    outputs: Vec<Named>,
}

struct RawNet {
    line: usize,
    name: Named,
    dom: usize,
    cod: usize,
    ports: Vec<(Named, usize)>,
    ops: Vec<(RawOp, usize)>,
    inputs: Option<(Vec<Named>, usize)>,
    outputs: Option<(Vec<Named>, usize)>,
}

/// Parses and checks a document: symbols and ports must be declared, operator
/// slots must match their symbol, and boundary lists must match the header.
pub fn parse(text: &str) -> Result<NetDocument, DslError> {
    let mut sigs: Vec<(SigDecl, usize, usize)> = Vec::new();
    let mut nets: Vec<RawNet> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let toks = lex(raw, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut l = Line {
            toks,
            pos: 0,
            line: line_no,
            end: raw.chars().count() + 1,
        };
        let (kw, kw_col) = l.word("a keyword")?;
        match kw.as_str() {
            "sig" => {
                let (name, col) = l.word("symbol name")?;
                let inputs = l.number("arity")?;
                let outputs = l.number("coarity")?;
                l.finish()?;
                sigs.push((SigDecl { name, inputs, outputs }, line_no, col));
            }
            "net" => {
                let name = l.word("net name")?;
                l.expect(Tok::Colon)?;
                let dom = l.number("input count")?;
                l.expect(Tok::Arrow)?;
                let cod = l.number("output count")?;
                l.finish()?;
                nets.push(RawNet {
                    line: line_no,
                    name,
                    dom,
                    cod,
                    ports: Vec::new(),
                    ops: Vec::new(),
                    inputs: None,
                    outputs: None,
                });
            }
            "ports" | "op" | "in" | "out" => {
                let Some(net) = nets.last_mut() else {
                    return Err(err(
                        DslErrorKind::SyntaxError,
                        line_no,
                        kw_col,
                        format!("`{kw}` outside a net block"),
                    ));
                };
                match kw.as_str() {
                    "ports" => {
                        for p in l.words_until(None)? {
                            net.ports.push((p, line_no));
                        }
                    }
                    "op" => {
                        let id = l.word("operator id")?;
                        let symbol = l.word("symbol")?;
                        l.expect(Tok::LParen)?;
                        let inputs = l.words_until(Some(Tok::RParen))?;
                        l.expect(Tok::Arrow)?;
                        l.expect(Tok::LParen)?;
                        let outputs = l.words_until(Some(Tok::RParen))?;
                        l.finish()?;
                        net.ops.push((
                            RawOp {
                                id,
                                symbol,
                                inputs,
                                outputs,
                            },
                            line_no,
                        ));
                    }
                    _ => {
                        let list = l.words_until(None)?;
                        let slot = if kw == "in" { &mut net.inputs } else { &mut net.outputs };
                        if slot.is_some() {
                            return Err(err(
                                DslErrorKind::SyntaxError,
                                line_no,
                                kw_col,
                                format!("second `{kw}` line in net `{}`", net.name.0),
                            ));
                        }
                        *slot = Some((list, line_no));
                    }
                }
            }
            _ => {
                return Err(err(
                    DslErrorKind::SyntaxError,
                    line_no,
                    kw_col,
                    format!("unknown keyword `{kw}`"),
                ))
            }
        }
    }
    check(sigs, nets)
}

fn check(sigs: Vec<(SigDecl, usize, usize)>, nets: Vec<RawNet>) -> Result<NetDocument, DslError> {
    let mut sig: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (d, line, col) in &sigs {
        if sig.insert(d.name.clone(), (d.inputs, d.outputs)).is_some() {
            return Err(err(
                DslErrorKind::SyntaxError,
                *line,
                *col,
                format!("symbol `{}` declared twice", d.name),
            ));
        }
    }
    let mut out = NetDocument {
        signature: sigs.into_iter().map(|(d, _, _)| d).collect(),
        nets: Vec::new(),
    };
    for raw in nets {
        if out.net(&raw.name.0).is_some() {
            return Err(err(
                DslErrorKind::SyntaxError,
                raw.line,
                raw.name.1,
                format!("net `{}` declared twice", raw.name.0),
            ));
        }
        let mut declared: HashMap<&str, ()> = HashMap::new();
        for ((p, col), line) in &raw.ports {
            if declared.insert(p.as_str(), ()).is_some() {
                return Err(err(
                    DslErrorKind::SyntaxError,
                    *line,
                    *col,
                    format!("port `{p}` declared twice"),
                ));
            }
        }
        let known = |names: &[Named], line: usize| -> Result<Vec<String>, DslError> {
            names
                .iter()
                .map(|(p, col)| {
                    if declared.contains_key(p.as_str()) {
                        Ok(p.clone())
                    } else {
                        Err(err(
                            DslErrorKind::UndeclaredPort,
                            line,
                            *col,
                            format!("port `{p}` is not declared in net `{}`", raw.name.0),
                        ))
                    }
                })
                .collect()
        };
        let mut operators = Vec::new();
        let mut op_ids: HashMap<&str, ()> = HashMap::new();
        for (op, line) in &raw.ops {
            if op_ids.insert(op.id.0.as_str(), ()).is_some() {
                return Err(err(
                    DslErrorKind::SyntaxError,
                    *line,
                    op.id.1,
                    format!("operator `{}` declared twice", op.id.0),
                ));
            }
            let Some(&(a, c)) = sig.get(&op.symbol.0) else {
                return Err(err(
                    DslErrorKind::UnknownSymbol,
                    *line,
                    op.symbol.1,
                    format!("symbol `{}` is not declared", op.symbol.0),
                ));
            };
            if op.inputs.len() != a || op.outputs.len() != c {
                return Err(err(
                    DslErrorKind::ArityMismatch,
                    *line,
                    op.symbol.1,
                    format!(
                        "`{}` is {a} -> {c} but operator `{}` has {} -> {}",
                        op.symbol.0,
                        op.id.0,
                        op.inputs.len(),
                        op.outputs.len()
                    ),
                ));
            }
            operators.push(OpDecl {
                id: op.id.0.clone(),
                symbol: op.symbol.0.clone(),
                inputs: known(&op.inputs, *line)?,
                outputs: known(&op.outputs, *line)?,
            });
        }
        let boundary = |list: &Option<(Vec<Named>, usize)>, want: usize, what: &str| {
            let (names, line) = match list {
                Some((names, line)) => (names.as_slice(), *line),
                None => (&[][..], raw.line),
            };
            if names.len() != want {
                return Err(err(
                    DslErrorKind::ArityMismatch,
                    line,
                    1,
                    format!("net `{}` declares {want} {what} but lists {}", raw.name.0, names.len()),
                ));
            }
            known(names, line)
        };
        let inputs = boundary(&raw.inputs, raw.dom, "inputs")?;
        let outputs = boundary(&raw.outputs, raw.cod, "outputs")?;
        out.nets.push(NetDecl {
            name: raw.name.0.clone(),
            dom: raw.dom,
            cod: raw.cod,
            ports: raw.ports.iter().map(|((p, _), _)| p.clone()).collect(),
            operators,
            inputs,
            outputs,
        });
    }
    Ok(out)
}

/// Canonical text of a document.
pub fn print(doc: &NetDocument) -> String {
    let mut s = String::new();
    for d in &doc.signature {
        s.push_str(&format!("sig {} {} {}\n", d.name, d.inputs, d.outputs));
    }
    for n in &doc.nets {
        if !s.is_empty() {
            s.push('\n');
        }
        s.push_str(&print_net(n));
    }
    s
}

pub fn print_net(n: &NetDecl) -> String {
    let mut s = format!("net {} : {} -> {}\n", n.name, n.dom, n.cod);
    let line = |kw: &str, items: &[String]| {
        if items.is_empty() {
            format!("{kw}\n")
        } else {
            format!("{kw} {}\n", items.join(" "))
        }
    };
    s.push_str(&line("ports", &n.ports));
    for o in &n.operators {
        s.push_str(&format!(
            "op {} {} ({}) -> ({})\n",
            o.id,
            o.symbol,
            o.inputs.join(" "),
            o.outputs.join(" ")
        ));
    }
    s.push_str(&line("in", &n.inputs));
    s.push_str(&line("out", &n.outputs));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAPER: &str = "\
sig alpha 2 1
sig beta 2 2

net main : 2 -> 2
ports a b c d e
op x alpha (a e) -> (c)
op y beta (c b) -> (d e)   # feedback through e
in a b
out d e
";

    #[test]
    fn parses_paper_example() {
        let doc = parse(PAPER).unwrap();
        let net = doc.net("main").unwrap().to_net();
        assert_eq!(net.port_count(), 5);
        assert_eq!(net.operator(1).outputs, vec![3, 4]);
        assert!(net.validate(&doc.signature()).is_valid());
    }

    #[test]
    fn round_trip() {
        let doc = parse(PAPER).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(print(&parse(&text).unwrap()), text);
    }

    #[test]
    fn unknown_symbol_is_located() {
        let e = parse("net n : 0 -> 0\nports p0 p1\nop x0 gamma (p0) -> (p1)\n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (DslErrorKind::UnknownSymbol, 3, 7));
    }

    #[test]
    fn error_kinds() {
        let e = parse("sig f 1 1\nnet n : 1 -> 1\nports a\nop x f (a) -> (b)\nin a\nout a\n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (DslErrorKind::UndeclaredPort, 4, 16));
        let e = parse("sig f 1 1\nnet n : 1 -> 1\nports a b\nop x f (a a) -> (b)\nin a\nout b\n").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::ArityMismatch);
        let e = parse("net n : 1 -> 0\nports a\n").unwrap_err();
        assert_eq!((e.kind, e.line), (DslErrorKind::ArityMismatch, 1));
        let e = parse("net n : 1 -> \n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (DslErrorKind::SyntaxError, 1, 14));
        let e = parse("ports a\n").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::SyntaxError);
        let e = parse("net n : 0 -> 0\nports a a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
        assert!(parse("net n : 0 -> 0\nops\n").is_err());
        assert!(parse("sig f 1 x\n").is_err());
        assert!(parse("net n : 0 -> 0 $\n").is_err());
    }

    #[test]
    fn empty_boundaries_and_comments() {
        let doc = parse("# nothing\nsig iota 1 1\nnet c : 0 -> 1\nports z\nop d iota (z) -> (z)\nin\nout z\n").unwrap();
        let net = doc.net("c").unwrap().to_net();
        assert_eq!((net.dom(), net.cod()), (0, 1));
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }

    #[test]
    fn from_net_round_trips() {
        let doc = parse(PAPER).unwrap();
        let net = doc.net("main").unwrap().to_net();
        let decl = NetDecl::from_net("main", &net);
        assert_eq!(decl.to_net(), net);
    }
}
