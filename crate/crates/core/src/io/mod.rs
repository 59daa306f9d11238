// SPDX-License-Identifier: Apache-2.0

//! File formats, atomic output and the external solver runner.

mod circuit_text;
mod dimacs;
mod solver;
mod stack_text;
mod stats;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::circuit::Circuit;
use crate::elim::ElimReport;
use crate::encode::VarMap;

pub use circuit_text::{parse_circuit, write_circuit, CircuitParseError, HEADER as CIRCUIT_HEADER};
pub use dimacs::{parse_dimacs, parse_dimacs_with, write_dimacs, DimacsError, DimacsOptions, ParsedCnf};
pub use solver::{
    parse_solver_output, run_external_solver, run_external_solver_with_args, SolverError, SolverOutcome,
};
pub use stack_text::{parse_stack, write_stack, StackParseError};
pub use stats::{StatsDocument, TechniqueRecord, STATS_SCHEMA, STATS_VERSION};

/// Writes `contents` to a temporary file next to `path`, then renames it
/// over `path`. Readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Writes the statistics document of `report` to `path` atomically.
pub fn write_stats(report: &ElimReport, unsat: bool, path: &Path) -> std::io::Result<()> {
    write_atomic(path, StatsDocument::from_report(report, unsat).to_json().as_bytes())
}

/// Variable numbering sidecar: `v <var> <gate name>` per variable, then
/// `f <input name> <0|1>` for inputs fixed by simplification.
pub fn write_varmap(c: &Circuit, vm: &VarMap) -> String {
    let mut out = String::new();
    for (g, v) in vm.iter() {
        writeln!(out, "v {v} {}", c.name(g)).expect("write to string");
    }
    for (&g, &value) in &vm.fixed {
        if c.gate(g).is_some() {
            writeln!(out, "f {} {}", c.name(g), u8::from(value)).expect("write to string");
        }
    }
    out
}
