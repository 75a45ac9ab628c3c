use std::fmt;
use std::path::Path;

use isentropes_core::Error;

#[derive(Debug)]
pub enum CliError {
    /// The computation itself rejected its input or failed; exit status 1.
    Domain(Error),
    /// Bad flags or an unusable output location; exit status 2.
    Config(String),
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}
