use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kpn_cli::config::{parse_config, InputSource};
use kpn_cli::{commands, csvio, CliError, Outcome};
use kpn_core::kahn::Stream;

#[derive(Parser)]
#[command(name = "kpn", version, about = "Kahn process networks as a graph IR")]
struct Cli {
    /// Emit nets and reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every net in a file.
    Check { file: PathBuf },
    /// Print the se-normal form of every net (or one).
    Normalize { file: PathBuf, net: Option<String> },
    /// Exit 0 if two nets are isomorphic, 1 otherwise.
    Iso { file: PathBuf, left: String, right: String },
    /// Exit 0 if two nets have isomorphic normal forms, 1 otherwise.
    SeEquiv { file: PathBuf, left: String, right: String },
    /// Evaluate a net in the Kahn stream semantics.
    Eval {
        file: PathBuf,
        net: String,
        /// One per net input: a `step,value` CSV file or an inline list like `1,2,3`.
        #[arg(long = "input")]
        inputs: Vec<String>,
        /// Maximum number of fixpoint sweeps.
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Constant used by `scale` and `divc`.
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a net across a schedule of sampling periods.
    Simulate {
        file: PathBuf,
        net: String,
        #[arg(long)]
        config: PathBuf,
        /// Standardized probe values (`t,value`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving one `trace_J.csv` per sampling period.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
    },
    /// Check the categorical laws on random nets.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// A single law, e.g. `yanking`.
        #[arg(long)]
        axiom: Option<String>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        file: path.display().to_string(),
        message: e.to_string(),
    })
}

fn input_stream(arg: &str) -> Result<Stream, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        return csvio::read_discrete(&text).map_err(|source| CliError::Csv {
            file: arg.to_string(),
            source,
        });
    }
    csvio::parse_inline(arg)
        .ok_or_else(|| CliError::Usage(format!("`{arg}` is neither a CSV file nor a list of numbers")))
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>, Option<PathBuf>), CliError> {
    let json = cli.json;
    let name = |p: &Path| p.display().to_string();
    Ok(match cli.cmd {
        Cmd::Check { file } => (commands::check(&name(&file), &read(&file)?, json)?, None, None),
        Cmd::Normalize { file, net } => (
            commands::normalize_doc(&name(&file), &read(&file)?, net.as_deref(), json)?,
            None,
            None,
        ),
        Cmd::Iso { file, left, right } => {
            (commands::iso(&name(&file), &read(&file)?, &left, &right, json)?, None, None)
        }
        Cmd::SeEquiv { file, left, right } => (
            commands::se_equiv(&name(&file), &read(&file)?, &left, &right, json)?,
            None,
            None,
        ),
        Cmd::Eval {
            file,
            net,
            inputs,
            budget,
            constant,
            out,
        } => {
            let streams = inputs.iter().map(|a| input_stream(a)).collect::<Result<Vec<_>, _>>()?;
            let o = commands::eval(&name(&file), &read(&file)?, &net, &streams, budget, constant, json)?;
            (o, out, None)
        }
        Cmd::Simulate {
            file,
            net,
            config,
            out,
            trace_dir,
        } => {
            let cfg = parse_config(&read(&config)?).map_err(|source| CliError::Config {
                file: name(&config),
                source,
            })?;
            let base = config.parent().unwrap_or(Path::new("."));
            let mut loaded = BTreeMap::new();
            for (k, src) in &cfg.inputs {
                if let InputSource::Csv(p) = src {
                    let path = base.join(p);
                    let points = csvio::read_continuous(&read(&path)?).map_err(|source| CliError::Csv {
                        file: name(&path),
                        source,
                    })?;
                    loaded.insert(*k, points);
                }
            }
            let o = commands::simulate(&name(&file), &read(&file)?, &net, &cfg, &loaded, json)?;
            (o, out, trace_dir)
        }
        Cmd::Laws { seed, count, axiom } => (commands::laws(seed, count, axiom.as_deref(), json)?, None, None),
    })
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim().to_string())),
    };
    let (outcome, out, trace_dir) = match run(cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let written = (|| {
        match &out {
            Some(path) => write(path, &outcome.body)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(outcome.body.as_bytes());
            }
        }
        if let Some(dir) = &trace_dir {
            fs::create_dir_all(dir).map_err(|e| CliError::Io {
                file: dir.display().to_string(),
                message: e.to_string(),
            })?;
            for (file, text) in &outcome.files {
                write(&dir.join(file), text)?;
            }
        }
        Ok::<_, CliError>(())
    })();
    match written {
        Ok(()) => ExitCode::from(outcome.code),
        Err(e) => fail(&e),
    }
}
