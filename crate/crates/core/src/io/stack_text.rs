// SPDX-License-Identifier: Apache-2.0

//! Reconstruction stack text, one entry per record in push order:
//!
//! ```text
//! e v <var> <n> <clause 0> ... <clause 0>
//! e c <k>
//! s <witness> <lits> 0        (k step lines)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{Clause, Literal};
use crate::reconstruct::{ReconstructionStack, StackEntry, WitnessStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct StackParseError {
    pub line: usize,
    pub msg: String,
}

fn write_lits(out: &mut String, c: &Clause) {
    for l in c.lits() {
        write!(out, " {}", l.to_dimacs()).expect("write to string");
    }
    out.push_str(" 0");
}

pub fn write_stack(stack: &ReconstructionStack) -> String {
    let mut out = String::new();
    for e in stack.entries() {
        match e {
            StackEntry::EliminatedVar { var, clauses } => {
                write!(out, "e v {var} {}", clauses.len()).expect("write to string");
                for c in clauses {
                    write_lits(&mut out, c);
                }
                out.push('\n');
            }
            StackEntry::WitnessClause { steps } => {
                writeln!(out, "e c {}", steps.len()).expect("write to string");
                for s in steps {
                    write!(out, "s {}", s.witness.to_dimacs()).expect("write to string");
                    write_lits(&mut out, &s.clause);
                    out.push('\n');
                }
            }
        }
    }
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<Vec<&'a str>> {
        for (i, l) in self.iter.by_ref() {
            self.line = i + 1;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if !toks.is_empty() {
                return Some(toks);
            }
        }
        None
    }

    fn err(&self, msg: impl Into<String>) -> StackParseError {
        StackParseError {
            line: self.line,
            msg: msg.into(),
        }
    }
}

fn int(lines: &Lines, tok: &str) -> Result<i64, StackParseError> {
    tok.parse().map_err(|_| lines.err(format!("`{tok}` is not an integer")))
}

fn literal(lines: &Lines, tok: &str) -> Result<Literal, StackParseError> {
    match int(lines, tok)? {
        0 => Err(lines.err("literal 0")),
        v if v.unsigned_abs() > i32::MAX as u64 => Err(lines.err("literal out of range")),
        v => Ok(Literal::from_dimacs(v as i32)),
    }
}

/// Splits zero-terminated literal runs; every token must be consumed.
fn clauses(lines: &Lines, toks: &[&str]) -> Result<Vec<Clause>, StackParseError> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for &t in toks {
        if int(lines, t)? == 0 {
            out.push(Clause::new(&cur));
            cur.clear();
        } else {
            cur.push(literal(lines, t)?);
        }
    }
    if !cur.is_empty() {
        return Err(lines.err("clause not terminated by 0"));
    }
    Ok(out)
}

pub fn parse_stack(text: &str) -> Result<ReconstructionStack, StackParseError> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
        line: 0,
    };
    let mut stack = ReconstructionStack::new();
    while let Some(toks) = lines.next() {
        match toks.as_slice() {
            ["e", "v", var, n, rest @ ..] => {
                let var = int(&lines, var)?;
                if var <= 0 || var > i64::from(i32::MAX) {
                    return Err(lines.err("variable out of range"));
                }
                let n = int(&lines, n)?;
                let cs = clauses(&lines, rest)?;
                if cs.len() as i64 != n {
                    return Err(lines.err(format!("expected {n} clauses, found {}", cs.len())));
                }
                stack.push_entry(StackEntry::EliminatedVar {
                    var: var as u32,
                    clauses: cs,
                });
            }
            ["e", "c", k] => {
                let k = int(&lines, k)?;
                if k < 0 {
                    return Err(lines.err("negative step count"));
                }
                let mut steps = Vec::new();
                for _ in 0..k {
                    let Some(step) = lines.next() else {
                        return Err(lines.err("missing step line"));
                    };
                    let ["s", w, rest @ ..] = step.as_slice() else {
                        return Err(lines.err("expected `s <witness> <lits> 0`"));
                    };
                    let witness = literal(&lines, w)?;
                    let cs = clauses(&lines, rest)?;
                    let [clause] = <[Clause; 1]>::try_from(cs).map_err(|_| lines.err("expected one clause"))?;
                    if !clause.contains(witness) {
                        return Err(lines.err("witness is not in its clause"));
                    }
                    steps.push(WitnessStep { clause, witness });
                }
                stack.push_entry(StackEntry::WitnessClause { steps });
            }
            _ => return Err(lines.err("expected `e v` or `e c` entry")),
        }
    }
    Ok(stack)
}
