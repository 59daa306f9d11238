// SPDX-License-Identifier: Apache-2.0

//! Ground-truth satisfiability by exhaustive enumeration.
//!
//! Assignments are enumerated by binary counting with variable 1 as the least
//! significant bit, so the first model found is the least one in that order.
//! [`search_sat`] is an exact backtracking search for formulas beyond the
//! truth-table bound; it shares no code with the preprocessing techniques.

use thiserror::Error;

use crate::formula::{Assignment, CnfFormula, Literal};

/// Default limit on the number of enumerated variables.
pub const DEFAULT_MAX_VARS: u32 = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OracleBound {
    pub max_vars: u32,
}

impl Default for OracleBound {
    fn default() -> OracleBound {
        OracleBound {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{vars} variables exceed the oracle bound of {bound}")]
    BoundExceeded { vars: u32, bound: u32 },
}

struct Masks {
    pos: u64,
    neg: u64,
}

fn masks(f: &CnfFormula, bound: &OracleBound) -> Result<Vec<Masks>, OracleError> {
    let n = f.num_vars();
    if n > bound.max_vars || n > 62 {
        return Err(OracleError::BoundExceeded {
            vars: n,
            bound: bound.max_vars.min(62),
        });
    }
    Ok(f.iter()
        .map(|(_, c)| {
            let mut m = Masks { pos: 0, neg: 0 };
            for l in c.lits() {
                let bit = 1u64 << (l.var() - 1);
                if l.is_positive() {
                    m.pos |= bit;
                } else {
                    m.neg |= bit;
                }
            }
            m
        })
        .collect())
}

fn satisfied(clauses: &[Masks], bits: u64) -> bool {
    clauses
        .iter()
        .all(|c| (c.pos & bits) != 0 || (c.neg & !bits) != 0)
}

fn to_assignment(n: u32, bits: u64) -> Assignment {
    let mut a = Assignment::new(n);
    for v in 1..=n {
        a.set_var(v, bits >> (v - 1) & 1 == 1);
    }
    a
}

/// Returns the least model, or `None` if the formula is unsatisfiable.
pub fn brute_force_sat(
    f: &CnfFormula,
    bound: &OracleBound,
) -> Result<Option<Assignment>, OracleError> {
    let clauses = masks(f, bound)?;
    let n = f.num_vars();
    Ok((0..1u64 << n)
        .find(|&bits| satisfied(&clauses, bits))
        .map(|bits| to_assignment(n, bits)))
}

/// Number of total assignments over `1..=num_vars` satisfying `f`.
pub fn count_models(f: &CnfFormula, bound: &OracleBound) -> Result<u64, OracleError> {
    let clauses = masks(f, bound)?;
    Ok((0..1u64 << f.num_vars())
        .filter(|&bits| satisfied(&clauses, bits))
        .count() as u64)
}

/// True iff both formulas agree on satisfiability.
pub fn equisat(a: &CnfFormula, b: &CnfFormula, bound: &OracleBound) -> Result<bool, OracleError> {
    Ok(brute_force_sat(a, bound)?.is_some() == brute_force_sat(b, bound)?.is_some())
}

/// Exact backtracking search with unit propagation, no learning. Branches on
/// the smallest unassigned variable, `false` first. Returns a total model.
pub fn search_sat(f: &CnfFormula) -> Option<Assignment> {
    let clauses: Vec<Vec<Literal>> = f.iter().map(|(_, c)| c.lits().to_vec()).collect();
    let mut a = Assignment::new(f.num_vars());
    if search(&clauses, &mut a) {
        a.complete_with_false();
        Some(a)
    } else {
        None
    }
}

fn search(clauses: &[Vec<Literal>], a: &mut Assignment) -> bool {
    let saved = a.clone();
    loop {
        let mut unit = None;
        for c in clauses {
            let mut free = None;
            let mut n_free = 0;
            let mut sat = false;
            for &l in c {
                match a.value(l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        n_free += 1;
                        free = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match n_free {
                0 => {
                    *a = saved;
                    return false;
                }
                1 => {
                    unit = free;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(l) => a.assign(l),
            None => break,
        }
    }
    let Some(var) = (1..=a.num_vars()).find(|&v| a.get(v).is_none()) else {
        return true;
    };
    for value in [false, true] {
        let mut b = a.clone();
        b.set_var(var, value);
        if search(clauses, &mut b) {
            *a = b;
            return true;
        }
    }
    *a = saved;
    false
}
