//! ICCMA-style command line front end.
//!
//! Flags follow the competition interface, including the two-letter short
//! flag `-fo`, which is why the parser is written by hand.

use std::io::Write;
use std::path::PathBuf;

use crate::af::{self, ArgumentationFramework};
use crate::error::{Error, Result};
use crate::tasks::{Reasoner, TaskId, TaskResult, SUPPORTED_TASKS};

pub const FORMATS: &[&str] = &["tgf", "apx"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tgf,
    Apx,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tgf" => Ok(Format::Tgf),
            "apx" => Ok(Format::Apx),
            _ => Err(format!("unsupported format `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Banner,
    Formats,
    Problems,
    Solve { task: TaskId, file: PathBuf, format: Format, query: Option<String>, seed: u64 },
}

fn usage() -> String {
    format!(
        "usage: {} -p TASK -f FILE -fo FORMAT [-a ARG] [--seed N]\n       {0} --formats | --problems",
        env!("CARGO_PKG_NAME")
    )
}

pub fn parse_args<S: AsRef<str>>(args: &[S]) -> std::result::Result<Command, String> {
    if args.is_empty() {
        return Ok(Command::Banner);
    }
    let mut task = None;
    let mut file = None;
    let mut format = None;
    let mut query = None;
    let mut seed = 0u64;
    let mut it = args.iter().map(AsRef::as_ref);
    while let Some(flag) = it.next() {
        match flag {
            "--formats" => return Ok(Command::Formats),
            "--problems" => return Ok(Command::Problems),
            "-p" | "-f" | "-fo" | "-a" | "--seed" => {
                let value = it.next().ok_or_else(|| format!("missing value for `{flag}`"))?;
                match flag {
                    "-p" => task = Some(value.parse::<TaskId>().map_err(|e| e.to_string())?),
                    "-f" => file = Some(PathBuf::from(value)),
                    "-fo" => format = Some(value.parse::<Format>()?),
                    "-a" => query = Some(value.to_string()),
                    _ => seed = value.parse().map_err(|_| format!("invalid seed `{value}`"))?,
                }
            }
            other => return Err(format!("unrecognized argument `{other}`\n{}", usage())),
        }
    }
    let task = task.ok_or_else(|| format!("missing -p\n{}", usage()))?;
    let file = file.ok_or_else(|| format!("missing -f\n{}", usage()))?;
    let format = format.ok_or_else(|| format!("missing -fo\n{}", usage()))?;
    Ok(Command::Solve { task, file, format, query, seed })
}

fn bracketed<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(","))
}

pub fn load(file: &std::path::Path, format: Format) -> Result<ArgumentationFramework> {
    let bytes = std::fs::read(file)?;
    Ok(match format {
        Format::Tgf => af::parse_tgf(&bytes)?,
        Format::Apx => af::parse_apx(&bytes)?,
    })
}

/// Renders a result. Extensions list arguments in input order.
pub fn render(af: &ArgumentationFramework, result: &TaskResult) -> String {
    match result {
        TaskResult::Extension(e) => bracketed(af.names(e)),
        TaskResult::NoExtension => "NO".to_string(),
        TaskResult::Verdict(true) => "YES".to_string(),
        TaskResult::Verdict(false) => "NO".to_string(),
        TaskResult::Count(n) => n.to_string(),
    }
}

fn solve(task: TaskId, file: &std::path::Path, format: Format, query: Option<&str>, seed: u64) -> Result<String> {
    let af = load(file, format)?;
    let query = match query {
        Some(name) => Some(af.index_of(name).ok_or_else(|| Error::UnknownArgument(name.to_string()))?),
        None => None,
    };
    let result = Reasoner::with_seed(&af, seed).solve(task, query)?;
    Ok(render(&af, &result))
}

/// Runs one invocation and returns the process exit code.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let command = match parse_args(args) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    let line = match command {
        Command::Banner => format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        Command::Formats => bracketed(FORMATS.iter().copied()),
        Command::Problems => {
            let names: Vec<String> = SUPPORTED_TASKS.iter().map(ToString::to_string).collect();
            bracketed(names.iter().map(String::as_str))
        }
        Command::Solve { task, file, format, query, seed } => {
            match solve(task, &file, format, query.as_deref(), seed) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 1;
                }
            }
        }
    };
    if writeln!(out, "{line}").is_err() {
        return 1;
    }
    0
}
