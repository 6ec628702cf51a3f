//! Simulation configs: one `key = value` per line, `#` comments.
//!
//! ```text
//! tmax = 1.02
//! schedule = 0.01, 0.005, 0.0025
//! tol = 1e-2
//! probes = 0.5, 1.0
//! input.0 = expr: sin(t)
//! input.1 = csv: samples.csv
//! ```
//!
//! Without `schedule`, `delta` halved three times is used.

use std::collections::BTreeMap;
use std::path::PathBuf;

use kpn_core::nstime::DeltaSchedule;
use thiserror::Error;

use crate::expr::{parse_expr, Expr};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    Expr { text: String, expr: Expr },
    /// Path as written, relative to the config file.
    Csv(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub delta: Option<f64>,
    pub tmax: f64,
    pub schedule: Vec<f64>,
    pub tol: f64,
    pub inputs: BTreeMap<usize, InputSource>,
    pub probes: Vec<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            delta: None,
            tmax: 1.0,
            schedule: Vec::new(),
            tol: 1e-6,
            inputs: BTreeMap::new(),
            probes: Vec::new(),
        }
    }
}

impl SimConfig {
    pub fn delta_schedule(&self) -> Result<DeltaSchedule, ConfigError> {
        let sched = if !self.schedule.is_empty() {
            DeltaSchedule::new(self.schedule.clone(), self.tol)
        } else if let Some(d) = self.delta {
            DeltaSchedule::halving(d, 3, self.tol)
        } else {
            return Err(ConfigError {
                line: 0,
                message: "neither `delta` nor `schedule` given".into(),
            });
        };
        sched.map_err(|e| ConfigError {
            line: 0,
            message: e.to_string(),
        })
    }
}

fn number(v: &str, line: usize, key: &str) -> Result<f64, ConfigError> {
    v.trim().parse().map_err(|_| ConfigError {
        line,
        message: format!("`{key}` expects a number, got `{}`", v.trim()),
    })
}

fn list(v: &str, line: usize, key: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| number(s, line, key))
        .collect()
}

fn positive(v: f64, line: usize, key: &str) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError {
            line,
            message: format!("`{key}` must be positive, got {v}"),
        })
    }
}

pub fn parse_config(text: &str) -> Result<SimConfig, ConfigError> {
    let mut cfg = SimConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "delta" => cfg.delta = Some(positive(number(value, line, key)?, line, key)?),
            "tmax" => cfg.tmax = positive(number(value, line, key)?, line, key)?,
            "tol" => cfg.tol = positive(number(value, line, key)?, line, key)?,
            "probes" => cfg.probes = list(value, line, key)?,
            "schedule" => {
                let s = list(value, line, key)?;
                for &d in &s {
                    positive(d, line, key)?;
                }
                if s.windows(2).any(|w| w[1] >= w[0]) {
                    return Err(ConfigError {
                        line,
                        message: "`schedule` must strictly decrease".into(),
                    });
                }
                cfg.schedule = s;
            }
            _ if key.starts_with("input.") => {
                let index: usize = key["input.".len()..].parse().map_err(|_| ConfigError {
                    line,
                    message: format!("bad input index in `{key}`"),
                })?;
                let source = if let Some(e) = value.strip_prefix("expr:") {
                    let text = e.trim().to_string();
                    let expr = parse_expr(&text).map_err(|err| ConfigError {
                        line,
                        message: format!("in `{key}`: {err}"),
                    })?;
                    InputSource::Expr { text, expr }
                } else if let Some(p) = value.strip_prefix("csv:") {
                    InputSource::Csv(PathBuf::from(p.trim()))
                } else {
                    return Err(ConfigError {
                        line,
                        message: format!("`{key}` needs an `expr:` or `csv:` source"),
                    });
                };
                if cfg.inputs.insert(index, source).is_some() {
                    return Err(ConfigError {
                        line,
                        message: format!("`{key}` given twice"),
                    });
                }
            }
            _ => {
                return Err(ConfigError {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
    }
    if let Some(p) = cfg.probes.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
        return Err(ConfigError {
            line: 0,
            message: format!("probe {p} outside the time axis"),
        });
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let cfg = parse_config(
            "# demo\ntmax = 1.5\nschedule = 0.1, 0.05 0.025\ntol = 1e-3\nprobes = 0.5,1\ninput.0 = expr: sin(t)\ninput.1 = csv: a.csv\n",
        )
        .unwrap();
        assert_eq!(cfg.tmax, 1.5);
        assert_eq!(cfg.schedule, vec![0.1, 0.05, 0.025]);
        assert_eq!(cfg.probes, vec![0.5, 1.0]);
        assert!(matches!(cfg.inputs[&0], InputSource::Expr { .. }));
        assert_eq!(cfg.inputs[&1], InputSource::Csv("a.csv".into()));
        assert_eq!(cfg.delta_schedule().unwrap().deltas().len(), 3);
    }

    #[test]
    fn delta_only_schedule() {
        let cfg = parse_config("delta = 0.01\n").unwrap();
        assert_eq!(cfg.delta_schedule().unwrap().deltas(), &[0.01, 0.005, 0.0025, 0.00125]);
        assert!(parse_config("tmax = 1\n").unwrap().delta_schedule().is_err());
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse_config("tol = 0\n").unwrap_err().line, 1);
        assert_eq!(parse_config("\nschedule = 0.1, 0.2, 0.05\n").unwrap_err().line, 2);
        assert!(parse_config("colour = red\n").is_err());
        assert!(parse_config("tmax 1\n").is_err());
        assert!(parse_config("input.0 = sin(t)\n").is_err());
        assert!(parse_config("input.x = expr: t\n").is_err());
        assert!(parse_config("input.0 = expr: sin(\n").is_err());
        assert!(parse_config("probes = -1\n").is_err());
    }
}
