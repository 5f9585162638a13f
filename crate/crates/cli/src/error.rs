use std::fmt;
use std::path::PathBuf;

/// Failure categories, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn io(path: PathBuf, source: std::io::Error) -> Self {
        CliError::Io { path, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numerical(_) => "numerical",
            CliError::Io { .. } => "io",
        }
    }
}

impl From<oam_rotation::Error> for CliError {
    fn from(e: oam_rotation::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// One line: `error: category=<c> message=<m>`, newlines flattened.
impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = match self {
            CliError::Usage(m) | CliError::Numerical(m) => m.clone(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
        };
        let message = message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "error: category={} message={message}", self.category())
    }
}
