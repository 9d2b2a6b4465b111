//! Command-line front end. `main` only forwards to [`run`].

mod args;
mod commands;

pub use args::{AlphaChoice, Cli, Command, Format, InterferenceArg, LemmaKind, NetworkSource, ParamsMode, Suite};

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::codec::CodecError;
use crate::gf::GfError;
use crate::linalg::LinalgError;
use crate::montecarlo::MonteCarloError;
use crate::network::NetworkError;
use crate::oracle::OracleError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// A checked property did not hold.
    Violation = 1,
    /// Bad arguments, unreadable input or an infeasible request.
    Usage = 2,
}

impl From<ExitCode> for i32 {
    fn from(c: ExitCode) -> i32 {
        c as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    MonteCarlo(#[from] MonteCarloError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub output: Option<String>,
    /// Resolved parameters, including any padding applied to `n`.
    pub parameters: Value,
}

impl RunManifest {
    fn new(command: &str, inputs: Vec<String>, seed: Option<u64>, output: Option<&Path>, parameters: Value) -> Self {
        RunManifest {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs,
            seed,
            output: output.map(|p| p.display().to_string()),
            parameters,
        }
    }
}

/// Where a command sends its primary output.
pub(crate) struct Sink<'a> {
    out: &'a mut dyn Write,
    path: Option<PathBuf>,
}

impl Sink<'_> {
    /// Writes `body` to the output file (plus a sibling manifest) or stdout.
    fn emit(&mut self, body: &str, manifest: &RunManifest) -> Result<(), CliError> {
        match &self.path {
            Some(path) => {
                write_file(path, body)?;
                let mut m = path.clone().into_os_string();
                m.push(".manifest.json");
                write_file(Path::new(&m), &(serde_json::to_string_pretty(manifest)? + "\n"))?;
            }
            None => self.out.write_all(body.as_bytes())?,
        }
        Ok(())
    }

    /// Status lines always go to stdout.
    fn note(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.out, "{line}")?;
        Ok(())
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the given streams. Returns the exit status.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitCode::Usage.into()
            } else {
                let _ = write!(out, "{text}");
                ExitCode::Success.into()
            };
        }
    };
    match commands::dispatch(cli, out, err) {
        Ok(code) => code.into(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::Usage.into()
        }
    }
}

/// Runs on the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
