//! Stream CSV files: `step,value` for discrete streams, `t,value` for
//! continuous ones. Several discrete outputs are written as
//! `output,step,value`.

use kpn_core::kahn::Stream;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

fn records(text: &str, header: [&str; 2]) -> Result<Vec<(usize, f64, f64)>, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found = rdr
        .headers()
        .map_err(|e| CsvError {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if found.iter().collect::<Vec<_>>() != header {
        return Err(CsvError {
            line: 1,
            message: format!("expected header `{}`", header.join(",")),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CsvError {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| -> Result<f64, CsvError> {
            rec[i].parse().map_err(|_| CsvError {
                line,
                message: format!("`{}` is not a number", &rec[i]),
            })
        };
        out.push((line, field(0)?, field(1)?));
    }
    Ok(out)
}

/// Reads a `step,value` file; steps must run `0, 1, 2, ...`.
pub fn read_discrete(text: &str) -> Result<Stream, CsvError> {
    let mut values = Vec::new();
    for (line, step, value) in records(text, ["step", "value"])? {
        if step != values.len() as f64 {
            return Err(CsvError {
                line,
                message: format!("expected step {}, found {step}", values.len()),
            });
        }
        values.push(value);
    }
    Ok(Stream(values))
}

/// Reads a `t,value` file with increasing times.
pub fn read_continuous(text: &str) -> Result<Vec<(f64, f64)>, CsvError> {
    let rows = records(text, ["t", "value"])?;
    if let Some(w) = rows.windows(2).find(|w| !(w[0].1 < w[1].1)) {
        return Err(CsvError {
            line: w[1].0,
            message: "times must increase".into(),
        });
    }
    if rows.is_empty() {
        return Err(CsvError {
            line: 1,
            message: "no samples".into(),
        });
    }
    Ok(rows.into_iter().map(|(_, t, v)| (t, v)).collect())
}

/// Parses `1,2,3` (an inline stream).
pub fn parse_inline(text: &str) -> Option<Stream> {
    if text.trim().is_empty() {
        return Some(Stream::bottom());
    }
    text.split(',')
        .map(|s| s.trim().parse().ok())
        .collect::<Option<Vec<f64>>>()
        .map(Stream)
}

fn write(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

pub fn write_discrete(s: &Stream) -> String {
    write(
        &["step", "value"],
        s.0.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]),
    )
}

/// One stream per output: `step,value` for a single output, otherwise
/// `output,step,value`.
pub fn write_outputs(outputs: &[Stream]) -> String {
    if let [s] = outputs {
        return write_discrete(s);
    }
    write(
        &["output", "step", "value"],
        outputs.iter().enumerate().flat_map(|(o, s)| {
            s.0.iter()
                .enumerate()
                .map(move |(k, v)| vec![o.to_string(), k.to_string(), v.to_string()])
        }),
    )
}

pub fn write_continuous(points: &[(f64, f64)]) -> String {
    write(
        &["t", "value"],
        points.iter().map(|(t, v)| vec![t.to_string(), v.to_string()]),
    )
}

/// Continuous rows tagged with their output: `output,t,value`.
pub fn write_continuous_outputs(rows: &[(usize, f64, f64)]) -> String {
    write(
        &["output", "t", "value"],
        rows.iter().map(|(o, t, v)| vec![o.to_string(), t.to_string(), v.to_string()]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_round_trip() {
        let s = Stream(vec![1.0, 3.0, 6.5]);
        let text = write_discrete(&s);
        assert_eq!(text, "step,value\n0,1\n1,3\n2,6.5\n");
        assert_eq!(read_discrete(&text).unwrap(), s);
    }

    #[test]
    fn discrete_errors() {
        assert_eq!(read_discrete("step,value\n0,1\n2,3\n").unwrap_err().line, 3);
        assert_eq!(read_discrete("t,value\n").unwrap_err().line, 1);
        assert!(read_discrete("step,value\n0,x\n").is_err());
        assert!(read_discrete("step,value\n0\n").is_err());
    }

    #[test]
    fn continuous_round_trip() {
        let pts = vec![(0.0, 1.0), (0.5, 2.0)];
        assert_eq!(read_continuous(&write_continuous(&pts)).unwrap(), pts);
        assert!(read_continuous("t,value\n1,0\n0.5,1\n").is_err());
        assert!(read_continuous("t,value\n").is_err());
    }

    #[test]
    fn inline_and_multi() {
        assert_eq!(parse_inline("1, 2,3").unwrap(), Stream(vec![1.0, 2.0, 3.0]));
        assert_eq!(parse_inline("").unwrap(), Stream::bottom());
        assert!(parse_inline("1,a").is_none());
        let text = write_outputs(&[Stream(vec![1.0]), Stream(vec![2.0])]);
        assert_eq!(text, "output,step,value\n0,0,1\n1,0,2\n");
    }
}
