use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, file or parameter counts: exit 2.
    Config(String),
    /// The request is well-formed but mathematically refused: exit 3.
    Domain(qeslab::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Domain(e) => write!(f, "domain error: {e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<qeslab::Error> for CliError {
    fn from(e: qeslab::Error) -> Self {
        match e {
            qeslab::Error::InvalidParams(m) | qeslab::Error::Parse(m) => CliError::Config(m),
            other => CliError::Domain(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
