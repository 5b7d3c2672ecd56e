//! Report envelope shared by every command: a versioned, deterministic JSON
//! document plus a human-readable text rendering. Identical inputs produce
//! byte-identical JSON (ordered maps everywhere, rationals as strings).

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub pass: bool,
    pub data: serde_json::Value,
    pub text: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    input: &'a str,
    pass: bool,
    data: &'a serde_json::Value,
}

impl Report {
    pub fn new(
        command: &str,
        input: &str,
        pass: bool,
        data: serde_json::Value,
        text: String,
    ) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            pass,
            data,
            text,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            command: &self.command,
            input: &self.input,
            pass: self.pass,
            data: &self.data,
        })
        .expect("report serializes")
    }
}

/// Command-level failures that map to dedicated exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparsable input (exit 2).
    Parse(String),
    /// Independent computation routes disagreed (exit 3).
    Convention(String),
    /// Malformed but parseable input data (exit 1): wrong dimensions,
    /// subspaces that are not subalgebras, frames violating invariants.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Convention(_) => 3,
            CliError::Input(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Convention(msg) => write!(f, "convention failure: {msg}"),
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<manin::Error> for CliError {
    fn from(err: manin::Error) -> Self {
        match err {
            manin::Error::Parse(_) => CliError::Parse(err.to_string()),
            manin::Error::Convention(_) => CliError::Convention(err.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub fn verdict(flag: bool) -> &'static str {
    if flag {
        "pass"
    } else {
        "FAIL"
    }
}
