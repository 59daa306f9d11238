// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{normalize_clause, CnfFormula, Literal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: literal {lit} exceeds the {vars} declared variables")]
    LiteralOutOfRange { line: usize, lit: i64, vars: u32 },
    #[error("line {line}: `{token}` is not a literal")]
    InvalidToken { line: usize, token: String },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct DimacsOptions {
    /// Treat a clause-count mismatch as an error instead of a warning.
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct ParsedCnf {
    pub formula: CnfFormula,
    pub declared_clauses: usize,
    pub tautologies_dropped: usize,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<ParsedCnf, DimacsError> {
    parse_dimacs_with(text, DimacsOptions::default())
}

/// Reads `c` comment lines, one `p cnf <vars> <clauses>` header, and
/// zero-terminated clauses that may span lines. A line starting with `%`
/// ends the input. Duplicate literals are merged and tautologies dropped.
pub fn parse_dimacs_with(text: &str, opts: DimacsOptions) -> Result<ParsedCnf, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut formula = CnfFormula::new(0);
    let mut pending: Vec<Literal> = Vec::new();
    let mut found = 0;
    let mut tautologies = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<u32>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let (vars, clauses) = parsed.ok_or(DimacsError::MalformedHeader { line: line_no })?;
            formula.set_num_vars(vars);
            header = Some((vars, clauses));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::MalformedHeader { line: line_no });
        };
        for token in t.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                let (clause, taut) = normalize_clause(&pending);
                pending.clear();
                found += 1;
                if taut {
                    tautologies += 1;
                } else {
                    formula.add_clause(clause);
                }
                continue;
            }
            if value.unsigned_abs() > u64::from(vars) {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    lit: value,
                    vars,
                });
            }
            pending.push(Literal::from_dimacs(value as i32));
        }
    }
    if !pending.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    let Some((_, declared)) = header else {
        return Err(DimacsError::MalformedHeader { line: 0 });
    };
    let mut warnings = Vec::new();
    if found != declared {
        if opts.strict {
            return Err(DimacsError::ClauseCountMismatch { declared, found });
        }
        warnings.push(format!("header declares {declared} clauses, found {found}"));
    }
    if tautologies > 0 {
        warnings.push(format!("dropped {tautologies} tautological clauses"));
    }
    Ok(ParsedCnf {
        formula,
        declared_clauses: declared,
        tautologies_dropped: tautologies,
        warnings,
    })
}

/// Canonical text: exact header, clauses in id order, literals in canonical
/// order.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.len());
    for (_, c) in f.iter() {
        for l in c.lits() {
            write!(out, "{} ", l.to_dimacs()).expect("write to string");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clauses(f: &CnfFormula) -> Vec<Vec<i32>> {
        f.to_dimacs()
    }

    #[test]
    fn parse_examples() {
        let p = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(clauses(&p.formula), vec![vec![1, -2]]);
        let p = parse_dimacs("c x\np cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(clauses(&p.formula), vec![vec![1], vec![-1]]);
        assert_eq!(
            parse_dimacs("p cnf 1 1\n2 0").unwrap_err(),
            DimacsError::LiteralOutOfRange { line: 2, lit: 2, vars: 1 }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_dimacs("p cnf x 1\n"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("1 0\n"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs(""), Err(DimacsError::MalformedHeader { .. })));
        assert_eq!(parse_dimacs("p cnf 2 1\n1 2").unwrap_err(), DimacsError::UnterminatedClause);
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 a 0"), Err(DimacsError::InvalidToken { .. })));
    }

    #[test]
    fn sloppy_counts_and_tautologies() {
        let p = parse_dimacs("p cnf 2 3\n1 -1 0\n2 2 0\n").unwrap();
        assert_eq!(p.tautologies_dropped, 1);
        assert_eq!(clauses(&p.formula), vec![vec![2]]);
        assert_eq!(p.warnings.len(), 2);
        let strict = DimacsOptions { strict: true };
        assert_eq!(
            parse_dimacs_with("p cnf 2 3\n1 0\n", strict).unwrap_err(),
            DimacsError::ClauseCountMismatch { declared: 3, found: 1 }
        );
    }

    #[test]
    fn multi_line_clauses_and_end_marker() {
        let p = parse_dimacs("p cnf 3 2\n1 2\n 3 0 -1\n0\n%\n0\n").unwrap();
        assert_eq!(clauses(&p.formula), vec![vec![1, 2, 3], vec![-1]]);
    }

    #[test]
    fn write_examples() {
        let f = CnfFormula::from_dimacs(&[&[1, -2]]);
        assert_eq!(write_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(write_dimacs(&CnfFormula::new(0)), "p cnf 0 0\n");
        let e = CnfFormula::from_dimacs(&[&[]]);
        assert_eq!(write_dimacs(&e), "p cnf 0 1\n0\n");
        let back = parse_dimacs(&write_dimacs(&e)).unwrap().formula;
        assert!(back.has_empty_clause());
    }
}
