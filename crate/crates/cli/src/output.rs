use std::fmt::Display;
use std::io::Read;

use logiprob_core::rational::{parse_rational, to_f64};
use num::BigRational;
use serde_json::{json, Value};

use crate::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Result of one invocation: exit status plus both renderings.
pub struct Report {
    pub status: u8,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn ok(text: impl Into<String>, json: Value) -> Self {
        Report { status: EXIT_OK, text: text.into(), json }
    }

    pub fn failed(text: impl Into<String>, json: Value) -> Self {
        Report { status: EXIT_DOMAIN, text: text.into(), json }
    }

    pub fn emit(self, format: Format) -> u8 {
        match format {
            Format::Text => {
                print!("{}", self.text);
                if !self.text.ends_with('\n') {
                    println!();
                }
            }
            Format::Json => {
                let mut doc = self.json;
                if let Value::Object(map) = &mut doc {
                    map.insert("status".into(), json!(self.status));
                }
                println!("{}", serde_json::to_string_pretty(&doc).expect("json value serializes"));
            }
        }
        self.status
    }
}

/// Malformed input; exits with status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl CliError {
    pub fn emit(self, format: Format) -> u8 {
        match format {
            Format::Text => eprintln!("error: {}\nhint: run `logiprob --help` for usage", self.0),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "error": self.0, "status": EXIT_USAGE })).unwrap()
            ),
        }
        EXIT_USAGE
    }
}

impl<E: Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub fn rational(text: &str, what: &str) -> Result<BigRational, CliError> {
    parse_rational(text).map_err(|e| CliError(format!("--{what}: {e}")))
}

/// Exact value with a decimal approximation, e.g. `3/8 (~0.375000)`.
pub fn show(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("{q} (~{:.6})", to_f64(q))
    }
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "exact": q.to_string(), "approx": to_f64(q) })
}

/// Contents of a file, or of standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))
    }
}
