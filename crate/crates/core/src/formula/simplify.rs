// SPDX-License-Identifier: Apache-2.0

//! Failed-literal probing, pure-literal elimination and bounded variable
//! elimination.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{bcp, Assignment, Clause, ClauseId, CnfFormula, Literal, Propagation};
use crate::reconstruct::ReconstructionStack;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("formula is unsatisfiable")]
pub struct Unsat;

fn top_level(f: &CnfFormula) -> Result<Assignment, Unsat> {
    match bcp(f, &Assignment::new(f.num_vars())) {
        Propagation::Fixpoint(a) => Ok(a),
        Propagation::Conflict => Err(Unsat),
    }
}

/// Probes literals in the order `1, -1, 2, -2, ...`. Whenever propagating a
/// literal conflicts, its complement is learned as a unit and probing
/// restarts. At the fixpoint the top-level units are propagated into `f`:
/// satisfied clauses are dropped (one unit clause per implied literal is
/// kept) and falsified literals are stripped.
pub fn failed_literal_probe(f: &mut CnfFormula) -> Result<BTreeSet<Literal>, Unsat> {
    if f.has_empty_clause() {
        return Err(Unsat);
    }
    let mut learned = BTreeSet::new();
    let top = 'probe: loop {
        let top = top_level(f)?;
        for var in 1..=f.num_vars() {
            if top.get(var).is_some() {
                continue;
            }
            for lit in [Literal::new(var, true), Literal::new(var, false)] {
                let mut a = top.clone();
                a.assign(lit);
                if bcp(f, &a).is_conflict() {
                    learned.insert(!lit);
                    f.add_clause(Clause::new(&[!lit]));
                    continue 'probe;
                }
            }
        }
        break top;
    };
    if top.assigned_count() > 0 {
        propagate_top_level(f, &top);
    }
    Ok(learned)
}

fn propagate_top_level(f: &mut CnfFormula, top: &Assignment) {
    let mut has_unit: BTreeSet<Literal> = BTreeSet::new();
    for id in f.ids() {
        let clause = f.clause(id).expect("live").clone();
        if top.satisfies_clause(&clause) {
            if clause.len() == 1 && has_unit.insert(clause.lits()[0]) {
                continue;
            }
            f.remove_clause(id);
        } else if clause.lits().iter().any(|&l| top.value(l).is_some()) {
            let kept: Vec<Literal> = clause
                .lits()
                .iter()
                .copied()
                .filter(|&l| top.value(l).is_none())
                .collect();
            f.replace_clause(id, Clause::new(&kept));
        }
    }
    for lit in top.true_literals() {
        if !has_unit.contains(&lit) {
            f.add_clause(Clause::new(&[lit]));
        }
    }
}

/// Removes every clause containing a pure literal, to fixpoint. Each removed
/// clause is pushed with its pure literal as witness. Returns the number of
/// clauses removed.
pub fn pure_literal_elim(f: &mut CnfFormula, stack: &mut ReconstructionStack) -> usize {
    let mut removed = 0;
    loop {
        let mut changed = false;
        for index in 0..2 * f.num_vars() as usize {
            let lit = Literal::from_index(index);
            if f.occurrence_count(lit) == 0 || f.occurrence_count(!lit) > 0 {
                continue;
            }
            let ids: Vec<ClauseId> = f.occurrences(lit).iter().copied().collect();
            for id in ids {
                let clause = f.remove_clause(id);
                stack.push_blocked(clause, lit);
                removed += 1;
            }
            changed = true;
        }
        if !changed {
            return removed;
        }
    }
}

/// Resolves away variables occurring in both phases while the number of
/// non-tautological resolvents stays within the number of clauses on the
/// variable plus `growth_bound`. Variables are visited in increasing order,
/// in repeated passes until no elimination succeeds. Stops early once the
/// empty clause is derived. Returns the eliminated variables in order.
pub fn bounded_variable_elim(
    f: &mut CnfFormula,
    growth_bound: usize,
    stack: &mut ReconstructionStack,
) -> Vec<u32> {
    let mut eliminated = Vec::new();
    loop {
        let mut changed = false;
        for var in 1..=f.num_vars() {
            if try_eliminate(f, var, growth_bound, stack) {
                eliminated.push(var);
                changed = true;
                if f.has_empty_clause() {
                    return eliminated;
                }
            }
        }
        if !changed {
            return eliminated;
        }
    }
}

fn try_eliminate(
    f: &mut CnfFormula,
    var: u32,
    growth_bound: usize,
    stack: &mut ReconstructionStack,
) -> bool {
    let pos_lit = Literal::new(var, true);
    let pos: Vec<ClauseId> = f.occurrences(pos_lit).iter().copied().collect();
    let neg: Vec<ClauseId> = f.occurrences(!pos_lit).iter().copied().collect();
    if pos.is_empty() || neg.is_empty() {
        return false;
    }
    let limit = pos.len() + neg.len() + growth_bound;
    let mut resolvents = Vec::new();
    for &p in &pos {
        let pc = f.clause(p).expect("live");
        if pc.is_tautology() {
            continue;
        }
        for &n in &neg {
            let nc = f.clause(n).expect("live");
            if nc.is_tautology() {
                continue;
            }
            let r = pc.resolve(nc, pos_lit);
            if !r.is_tautology() {
                resolvents.push(r);
                if resolvents.len() > limit {
                    return false;
                }
            }
        }
    }
    let ids: BTreeSet<ClauseId> = pos.into_iter().chain(neg).collect();
    let saved: Vec<Clause> = ids.into_iter().map(|id| f.remove_clause(id)).collect();
    stack.push_eliminated(var, saved);
    for r in resolvents {
        f.add_clause(r);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lit(v: i32) -> Literal {
        Literal::from_dimacs(v)
    }

    fn clauses(f: &CnfFormula) -> Vec<Vec<i32>> {
        f.clause_multiset().iter().map(Clause::to_dimacs).collect()
    }

    #[test]
    fn fle_learns_failed_literal() {
        let mut f = CnfFormula::from_dimacs(&[&[-1, 2], &[-1, -2]]);
        let learned = failed_literal_probe(&mut f).unwrap();
        assert_eq!(learned.into_iter().collect::<Vec<_>>(), vec![lit(-1)]);
        assert_eq!(clauses(&f), vec![vec![-1]]);
        assert!(f.check_index());
    }

    #[test]
    fn fle_no_failure() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2]]);
        assert!(failed_literal_probe(&mut f).unwrap().is_empty());
        assert_eq!(clauses(&f), vec![vec![1, 2]]);
    }

    #[test]
    fn fle_top_level_conflict() {
        let mut f = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        assert_eq!(failed_literal_probe(&mut f), Err(Unsat));
    }

    #[test]
    fn fle_keeps_equivalence() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[1, -2], &[-1, 3, 4], &[-3, 4]]);
        let before = oracle::count_models(&f, &oracle::OracleBound::default()).unwrap();
        let learned = failed_literal_probe(&mut f).unwrap();
        assert!(learned.contains(&lit(1)));
        let after = oracle::count_models(&f, &oracle::OracleBound::default()).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn pl_removes_pure_clauses() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[1, -2]]);
        let mut stack = ReconstructionStack::new();
        assert_eq!(pure_literal_elim(&mut f, &mut stack), 2);
        assert!(f.is_empty());
        assert_eq!(stack.len(), 2);
        let m = stack.reconstruct_model(&Assignment::new(2), 2).unwrap();
        assert!(m.satisfies(&CnfFormula::from_dimacs(&[&[1, 2], &[1, -2]])));
    }

    #[test]
    fn pl_no_pure_literal() {
        let mut f = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        let mut stack = ReconstructionStack::new();
        assert_eq!(pure_literal_elim(&mut f, &mut stack), 0);
        assert_eq!(f.len(), 2);
        let mut empty = CnfFormula::new(0);
        assert_eq!(pure_literal_elim(&mut empty, &mut stack), 0);
    }

    #[test]
    fn ve_single_resolvent() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[-1, 3]]);
        let mut stack = ReconstructionStack::new();
        assert_eq!(bounded_variable_elim(&mut f, 0, &mut stack), vec![1]);
        assert_eq!(clauses(&f), vec![vec![2, 3]]);
    }

    #[test]
    fn ve_at_bound() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[1, 3], &[-1, 4], &[-1, 5]]);
        let mut stack = ReconstructionStack::new();
        bounded_variable_elim(&mut f, 0, &mut stack);
        assert_eq!(
            clauses(&f),
            vec![vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5]]
        );
    }

    #[test]
    fn ve_over_bound_is_skipped() {
        // 3 x 3 non-tautological resolvents exceed 6 clauses
        let mut f = CnfFormula::from_dimacs(&[
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[-1, 5],
            &[-1, 6],
            &[-1, 7],
        ]);
        let mut stack = ReconstructionStack::new();
        assert!(bounded_variable_elim(&mut f, 0, &mut stack).is_empty());
        assert_eq!(f.len(), 6);
        assert_eq!(bounded_variable_elim(&mut f, 3, &mut stack), vec![1]);
        assert_eq!(f.len(), 9);
    }

    #[test]
    fn ve_derives_empty_clause() {
        let mut f = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        let mut stack = ReconstructionStack::new();
        bounded_variable_elim(&mut f, 0, &mut stack);
        assert!(f.has_empty_clause());
        assert_eq!(f.len(), 1);
    }
}
