//! Output envelope and atomic file writes.
//!
//! Every document starts with a header recording the program version, the
//! subcommand, the fully resolved parameters and the seed. Nothing
//! time-dependent goes in, so identical invocations give identical bytes.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub program: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
    /// Derived quantities worth keeping next to the data (aperture radius,
    /// truncation mass, SNR crossing, ...).
    pub results: BTreeMap<String, Value>,
}

impl Header {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            program: "oamrot",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.into(),
            seed,
            params: BTreeMap::new(),
            results: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.into(), to_value(value));
        self
    }

    pub fn result(mut self, key: &str, value: impl Serialize) -> Self {
        self.results.insert(key.into(), to_value(value));
        self
    }

    fn csv_lines(&self) -> String {
        let mut out = format!(
            "# program: {}\n# version: {}\n# subcommand: {}\n# seed: {}\n",
            self.program, self.version, self.subcommand, self.seed
        );
        for (k, v) in &self.params {
            out.push_str(&format!("# param.{k}: {}\n", plain(v)));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("# result.{k}: {}\n", plain(v)));
        }
        out
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("header values are plain data")
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    header: &'a Header,
    data: &'a T,
}

/// A finished document: header plus a CSV body and a JSON payload.
pub struct Document<T: Serialize> {
    pub header: Header,
    pub csv_body: String,
    pub data: T,
}

impl<T: Serialize> Document<T> {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => format!("{}{}", self.header.csv_lines(), self.csv_body),
            Format::Json => {
                let env = Envelope { header: &self.header, data: &self.data };
                let mut s = serde_json::to_string_pretty(&env).expect("document serializes");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes to `path` through a sibling temporary file and a rename, or to
/// stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| CliError::io(PathBuf::from("<stdout>"), e));
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e| CliError::io(path.to_path_buf(), e);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
