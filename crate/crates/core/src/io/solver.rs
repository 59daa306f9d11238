// SPDX-License-Identifier: Apache-2.0

//! Runs an external SAT solver on a formula.
//!
//! The formula is written to a temporary DIMACS file whose path is the
//! solver's last argument. The result comes from the `s` status line when
//! one is printed, otherwise from the exit code (10 satisfiable, 20
//! unsatisfiable). Models are read from `v` lines.

use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::dimacs::write_dimacs;
use crate::formula::{Assignment, CnfFormula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    Sat(Assignment),
    Unsat,
    Unknown(String),
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("cannot run solver")]
    SpawnFailure(#[source] std::io::Error),
    #[error("cannot parse solver output: {0}")]
    ParseFailure(String),
}

pub fn run_external_solver(path: &Path, f: &CnfFormula, timeout: Duration) -> Result<SolverOutcome, SolverError> {
    run_external_solver_with_args(path, &[], f, timeout)
}

pub fn run_external_solver_with_args(
    path: &Path,
    args: &[String],
    f: &CnfFormula,
    timeout: Duration,
) -> Result<SolverOutcome, SolverError> {
    let input = tempfile::Builder::new()
        .suffix(".cnf")
        .tempfile()
        .map_err(SolverError::SpawnFailure)?;
    std::fs::write(input.path(), write_dimacs(f)).map_err(SolverError::SpawnFailure)?;
    let mut child = Command::new(path)
        .args(args)
        .arg(input.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(SolverError::SpawnFailure)?;
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = thread::spawn(move || {
        let mut buf = String::new();
        let _ = stdout.read_to_string(&mut buf);
        buf
    });
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait().map_err(SolverError::SpawnFailure)? {
            break status;
        }
        if start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(SolverOutcome::Unknown("timeout".into()));
        }
        thread::sleep(Duration::from_millis(5));
    };
    let output = reader.join().unwrap_or_default();
    parse_solver_output(&output, status.code(), f.num_vars())
}

/// Interprets solver stdout and exit code. Variables the model leaves out
/// are false.
pub fn parse_solver_output(output: &str, code: Option<i32>, num_vars: u32) -> Result<SolverOutcome, SolverError> {
    let mut status: Option<&str> = None;
    let mut values: Vec<i64> = Vec::new();
    for line in output.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("s ") {
            if status.is_some() {
                return Err(SolverError::ParseFailure("more than one status line".into()));
            }
            status = Some(rest.trim());
        } else if let Some(rest) = t.strip_prefix("v ").or((t == "v").then_some("")) {
            for tok in rest.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| SolverError::ParseFailure(format!("bad model token `{tok}`")))?;
                values.push(v);
            }
        }
    }
    match (status, code) {
        (Some("SATISFIABLE"), _) | (None, Some(10)) => {}
        (Some("UNSATISFIABLE"), _) => return Ok(SolverOutcome::Unsat),
        (Some("UNKNOWN"), _) => return Ok(SolverOutcome::Unknown("solver reported UNKNOWN".into())),
        (Some(other), _) => return Err(SolverError::ParseFailure(format!("unknown status `{other}`"))),
        (None, Some(20)) => return Ok(SolverOutcome::Unsat),
        (None, Some(c)) => return Ok(SolverOutcome::Unknown(format!("exit code {c}"))),
        (None, None) => return Ok(SolverOutcome::Unknown("terminated by signal".into())),
    }
    if values.is_empty() {
        return Err(SolverError::ParseFailure("satisfiable without a model".into()));
    }
    let mut model = Assignment::new(num_vars);
    for v in values {
        if v == 0 {
            continue;
        }
        let var = v.unsigned_abs();
        if var > u64::from(num_vars) {
            return Err(SolverError::ParseFailure(format!("model literal {v} out of range")));
        }
        let (var, value) = (var as u32, v > 0);
        if model.get(var).is_some_and(|old| old != value) {
            return Err(SolverError::ParseFailure(format!("variable {var} assigned both ways")));
        }
        model.set_var(var, value);
    }
    model.complete_with_false();
    Ok(SolverOutcome::Sat(model))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_lines() {
        let out = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2 0\n", Some(10), 2).unwrap();
        assert_eq!(out, SolverOutcome::Sat(Assignment::from_bools(&[true, false])));
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n", Some(20), 2).unwrap(), SolverOutcome::Unsat);
        assert!(matches!(parse_solver_output("s UNKNOWN\n", Some(0), 2).unwrap(), SolverOutcome::Unknown(_)));
    }

    #[test]
    fn exit_codes_without_status() {
        assert_eq!(parse_solver_output("", Some(20), 1).unwrap(), SolverOutcome::Unsat);
        assert_eq!(
            parse_solver_output("v 1\nv 0\n", Some(10), 3).unwrap(),
            SolverOutcome::Sat(Assignment::from_bools(&[true, false, false]))
        );
        assert!(matches!(parse_solver_output("", Some(1), 1).unwrap(), SolverOutcome::Unknown(_)));
    }

    #[test]
    fn malformed_output() {
        for text in ["s SATISFIABLE\n", "s SATISFIABLE\nv x 0\n", "s SATISFIABLE\nv 3 0\n", "s SATISFIABLE\nv 1 -1 0\n", "s MAYBE\n"] {
            assert!(matches!(parse_solver_output(text, Some(10), 2), Err(SolverError::ParseFailure(_))), "{text}");
        }
    }

    #[test]
    fn missing_binary() {
        let f = CnfFormula::new(1);
        let err = run_external_solver(Path::new("/nonexistent/solver"), &f, Duration::from_secs(1)).unwrap_err();
        assert!(matches!(err, SolverError::SpawnFailure(_)));
    }
}
