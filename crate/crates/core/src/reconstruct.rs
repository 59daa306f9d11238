// SPDX-License-Identifier: Apache-2.0

//! Solution reconstruction after satisfiability-preserving clause removal.
//!
//! Entries are replayed in reverse push order. A witness entry holds an
//! ordered list of `(clause snapshot, witness)` steps, also replayed in
//! reverse: whenever the snapshot is falsified, the witness literal is made
//! true. An eliminated-variable entry stores every clause that mentioned the
//! variable when it was resolved away; replay picks a value for the variable
//! that satisfies all of them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Assignment, Clause, Literal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub clause: Clause,
    pub witness: Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StackEntry {
    WitnessClause { steps: Vec<WitnessStep> },
    EliminatedVar { var: u32, clauses: Vec<Clause> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReconstructionStack {
    entries: Vec<StackEntry>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReconstructionError {
    #[error("no value of variable {var} satisfies its saved clauses")]
    ReconstructionFailure { var: u32 },
}

impl ReconstructionStack {
    pub fn new() -> ReconstructionStack {
        ReconstructionStack::default()
    }

    pub fn entries(&self) -> &[StackEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pushes a witness entry. Panics if some witness is missing from its
    /// snapshot.
    pub fn push_witness_steps(&mut self, steps: Vec<WitnessStep>) {
        assert!(
            steps.iter().all(|s| s.clause.contains(s.witness)),
            "witness must occur in its clause snapshot"
        );
        self.entries.push(StackEntry::WitnessClause { steps });
    }

    pub fn push_blocked(&mut self, clause: Clause, witness: Literal) {
        self.push_witness_steps(vec![WitnessStep { clause, witness }]);
    }

    pub fn push_eliminated(&mut self, var: u32, clauses: Vec<Clause>) {
        self.entries.push(StackEntry::EliminatedVar { var, clauses });
    }

    /// Records `x == map[x]` for every substituted positive literal `x`, as a
    /// pair of witness steps that copy the representative's value onto `x`.
    pub fn push_equivalences(&mut self, map: &BTreeMap<Literal, Literal>) {
        for (&from, &to) in map.iter().filter(|(l, _)| l.is_positive()) {
            let steps = vec![
                WitnessStep {
                    clause: Clause::new(&[from, !to]),
                    witness: from,
                },
                WitnessStep {
                    clause: Clause::new(&[!from, to]),
                    witness: !from,
                },
            ];
            self.push_witness_steps(steps);
        }
    }

    pub fn push_entry(&mut self, entry: StackEntry) {
        match entry {
            StackEntry::WitnessClause { steps } => self.push_witness_steps(steps),
            e @ StackEntry::EliminatedVar { .. } => self.entries.push(e),
        }
    }

    /// Appends all entries of `other` after those of `self`.
    pub fn extend(&mut self, other: ReconstructionStack) {
        self.entries.extend(other.entries);
    }

    /// Repairs a model of the reduced formula into a model of the original.
    ///
    /// Unassigned variables of `model` default to false.
    pub fn reconstruct_model(
        &self,
        model: &Assignment,
        original_num_vars: u32,
    ) -> Result<Assignment, ReconstructionError> {
        let mut a = model.clone();
        if a.num_vars() < original_num_vars {
            a.resize(original_num_vars);
        }
        a.complete_with_false();
        for entry in self.entries.iter().rev() {
            match entry {
                StackEntry::WitnessClause { steps } => {
                    for step in steps.iter().rev() {
                        if !a.satisfies_clause(&step.clause) {
                            a.assign(step.witness);
                        }
                    }
                }
                StackEntry::EliminatedVar { var, clauses } => {
                    let fits = |a: &mut Assignment, value: bool| {
                        a.set_var(*var, value);
                        clauses.iter().all(|c| a.satisfies_clause(c))
                    };
                    let current = a.get(*var).unwrap_or(false);
                    if !fits(&mut a, current) && !fits(&mut a, !current) {
                        return Err(ReconstructionError::ReconstructionFailure { var: *var });
                    }
                }
            }
        }
        Ok(a)
    }
}

pub fn reconstruct_model(
    stack: &ReconstructionStack,
    model: &Assignment,
    original_num_vars: u32,
) -> Result<Assignment, ReconstructionError> {
    stack.reconstruct_model(model, original_num_vars)
}
