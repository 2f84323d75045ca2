use serde::Serialize;
use serde_json::Value;
use tpn_core::Error;

use crate::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_OBSTRUCTION: u8 = 3;

/// The JSON document printed with `--format json`.
#[derive(Serialize, Debug)]
pub struct Document<'a> {
    pub n: i64,
    pub command: &'a str,
    pub result: &'a Value,
    pub max_deviation: Option<f64>,
    pub pairs_checked: Option<u64>,
}

#[derive(Debug)]
pub struct Report {
    pub n: i64,
    pub command: String,
    pub result: Value,
    pub max_deviation: Option<f64>,
    pub pairs_checked: Option<u64>,
    pub text: String,
    pub exit_code: u8,
}

impl Report {
    pub fn new(n: i64, command: &str, result: Value, text: String) -> Self {
        Self {
            n,
            command: command.to_string(),
            result,
            max_deviation: None,
            pairs_checked: None,
            text,
            exit_code: EXIT_OK,
        }
    }

    pub fn document(&self) -> Document<'_> {
        Document {
            n: self.n,
            command: &self.command,
            result: &self.result,
            max_deviation: self.max_deviation,
            pairs_checked: self.pairs_checked,
        }
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!(
                "{}",
                serde_json::to_string(&self.document()).expect("report serializes")
            ),
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSplitting(_) => EXIT_OBSTRUCTION,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}
