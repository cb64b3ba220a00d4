//! Runs a DIMACS solver as a subprocess and reads SAT-competition output.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use super::{Budget, SolverResult, UnknownReason};
use crate::cnf::{to_dimacs, Formula, Lit, Model};
use crate::error::BackendError;

const POLL: Duration = Duration::from_millis(2);

/// Parsed solver output, before local verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reply {
    Sat(Vec<i32>),
    Unsat,
    Unknown,
}

/// Reads the `s` status line and the `v` value lines.
pub fn parse_output(text: &str) -> Result<Option<Reply>, BackendError> {
    let mut status = None;
    let mut values = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => Reply::Sat(Vec::new()),
                "UNSATISFIABLE" => Reply::Unsat,
                "UNKNOWN" => Reply::Unknown,
                other => return Err(BackendError::MalformedOutput(format!("status line {other:?}"))),
            });
        } else if let Some(rest) = line
            .strip_prefix("v ")
            .or(line.strip_prefix("v\t"))
            .or((line == "v").then_some(""))
        {
            for token in rest.split_whitespace() {
                let lit: i32 = token
                    .parse()
                    .map_err(|_| BackendError::MalformedOutput(format!("value token {token:?}")))?;
                if lit != 0 {
                    values.push(lit);
                }
            }
        }
    }
    Ok(match status {
        Some(Reply::Sat(_)) => Some(Reply::Sat(values)),
        other => other,
    })
}

fn command_args(template: &[String], path: &str) -> Vec<String> {
    if template.iter().any(|a| a.contains("{}")) {
        template.iter().map(|a| a.replace("{}", path)).collect()
    } else {
        template
            .iter()
            .cloned()
            .chain(std::iter::once(path.to_string()))
            .collect()
    }
}

/// Writes `formula` plus `assumptions` as unit clauses to a temporary file,
/// runs the solver on it and interprets the reply.
pub(crate) fn run(
    formula: &Formula,
    assumptions: &[Lit],
    program: &str,
    template: &[String],
    budget: &Budget,
) -> Result<SolverResult, BackendError> {
    let io = |e: std::io::Error| BackendError::Io(e.to_string());
    let mut instance;
    let effective = if assumptions.is_empty() {
        formula
    } else {
        instance = formula.clone();
        for &l in assumptions {
            instance
                .add_clause([l])
                .map_err(|e| BackendError::Config(e.to_string()))?;
        }
        &instance
    };
    let mut file = tempfile::Builder::new()
        .prefix("rubiksat-")
        .suffix(".cnf")
        .tempfile()
        .map_err(io)?;
    file.write_all(to_dimacs(effective).as_bytes()).map_err(io)?;
    file.flush().map_err(io)?;
    let path = file.path().to_string_lossy().into_owned();

    let mut child = Command::new(program)
        .args(command_args(template, &path))
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| BackendError::Spawn {
            path: program.to_string(),
            message: e.to_string(),
        })?;
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let reader = std::thread::spawn(move || {
        let mut text = String::new();
        stdout.read_to_string(&mut text).map(|_| text)
    });

    let status = loop {
        if let Some(status) = child.try_wait().map_err(io)? {
            break status;
        }
        let cancelled = budget.stop.is_some_and(|s| s.load(Ordering::Relaxed));
        let expired = budget.deadline.is_some_and(|d| Instant::now() >= d);
        if cancelled || expired {
            let _ = child.kill();
            let _ = child.wait();
            let _ = reader.join();
            let reason = if cancelled {
                UnknownReason::Cancelled
            } else {
                UnknownReason::Timeout
            };
            return Ok(SolverResult::Unknown(reason));
        }
        std::thread::sleep(POLL);
    };
    let text = reader
        .join()
        .map_err(|_| BackendError::Io("output reader panicked".into()))?
        .map_err(io)?;

    match parse_output(&text)? {
        Some(Reply::Sat(values)) => {
            let mut model = Model::new(vec![false; formula.num_vars()]);
            for v in values {
                let lit = Lit::from_dimacs(v).expect("zero filtered");
                if lit.var().index() >= formula.num_vars() {
                    return Err(BackendError::MalformedOutput(format!("value for unknown variable {v}")));
                }
                model.set(lit.var(), lit.is_positive());
            }
            super::checked(effective, model)
        }
        Some(Reply::Unsat) => Ok(SolverResult::Unsat),
        Some(Reply::Unknown) => Ok(SolverResult::Unknown(UnknownReason::Solver)),
        None if !status.success() => Ok(SolverResult::Unknown(UnknownReason::Exit(status.code()))),
        None => Err(BackendError::MalformedOutput("no status line".into())),
    }
}
