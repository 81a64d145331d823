//! Command-line driver: JSON configuration, seeded batches, reports.

pub mod acceptance;
pub mod args;
pub mod batch;
mod commands;
pub mod input;

use std::io::Write;

use mustafin_core::Error;
use serde::Serialize;

pub use args::RunConfig;
pub use batch::{BatchReport, TrialResult, Verdict};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, files or inputs: exit code 2.
    Usage(String),
}

impl CliError {
    /// Library errors raised while reading inputs.
    pub fn input(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// A finished command: its JSON report and whether it passed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub passed: bool,
    /// Lines for the terminal in addition to the report.
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn new<T: Serialize>(report: &T, passed: bool) -> Self {
        Outcome { report: serde_json::to_value(report).expect("reports serialize"), passed, lines: Vec::new() }
    }
}

/// Runs one invocation, writes its report, and returns the exit code.
pub fn run(rc: &RunConfig) -> i32 {
    match commands::dispatch(rc) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n";
            let written = match &rc.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None if out.lines.is_empty() => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
                None => Ok(()),
            };
            for l in &out.lines {
                println!("{l}");
            }
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
