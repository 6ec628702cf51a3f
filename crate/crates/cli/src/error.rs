use kpn_core::kahn::EvalError;
use kpn_core::laws::LawError;
use kpn_core::nstime::NsError;
use kpn_core::rewrite::RewriteError;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::ConfigError;
use crate::csvio::CsvError;
use crate::dsl::DslError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{source}")]
    Dsl { file: String, source: DslError },
    #[error("{file}: {source}")]
    Config { file: String, source: ConfigError },
    #[error("{file}: {source}")]
    Csv { file: String, source: CsvError },
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("no net named `{0}`")]
    UnknownNet(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Ns(#[from] NsError),
    #[error(transparent)]
    Law(#[from] LawError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl CliError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Dsl { source, .. } => source.kind.code(),
            CliError::Config { .. } => "config_error",
            CliError::Csv { .. } => "csv_error",
            CliError::Io { .. } => "io_error",
            CliError::UnknownNet(_) => "unknown_net",
            CliError::Usage(_) => "usage",
            CliError::Eval(e) => match e {
                EvalError::MissingBinding(_) => "missing_binding",
                EvalError::MonotonicityViolation { .. } => "monotonicity_violation",
                EvalError::ArityMismatch(_) => "eval_arity_mismatch",
            },
            CliError::Ns(e) => match e {
                NsError::InvalidPeriod(_) => "invalid_period",
                NsError::InvalidSchedule(_) => "invalid_schedule",
                NsError::OutOfDomain { .. } => "out_of_domain",
                NsError::NonProductive { .. } => "non_productive",
                NsError::NonConvergent { .. } => "non_convergent",
                NsError::Eval(_) => "eval_error",
            },
            CliError::Law(e) => match e {
                LawError::ArityMismatch { .. } => "law_arity_mismatch",
                LawError::UnknownLaw(_) => "unknown_law",
                LawError::Net(_) => "net_error",
            },
            CliError::Rewrite(e) => match e {
                RewriteError::StaleRedex(_) => "stale_redex",
                RewriteError::ArityMismatch { .. } => "rewrite_arity_mismatch",
            },
        }
    }

    /// 2 for usage and input errors, 3 for evaluation errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Eval(_) | CliError::Ns(_) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "code": self.code(), "message": self.to_string() });
        match self {
            CliError::Dsl { file, source } => {
                v["file"] = json!(file);
                v["line"] = json!(source.line);
                v["column"] = json!(source.column);
            }
            CliError::Config { file, source } => {
                v["file"] = json!(file);
                v["line"] = json!(source.line);
            }
            CliError::Csv { file, source } => {
                v["file"] = json!(file);
                v["line"] = json!(source.line);
            }
            CliError::Io { file, .. } => v["file"] = json!(file),
            _ => {}
        }
        json!({ "error": v })
    }
}
