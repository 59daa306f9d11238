// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use thiserror::Error;

use super::procedures::{eliminate_in_order, ScanOrder};
use super::{ElimReport, TechniqueId};
use crate::formula::{
    bounded_variable_elim, equivalent_literal_substitution, failed_literal_probe,
    pure_literal_elim, Clause, CnfFormula, Substitution,
};
use crate::reconstruct::ReconstructionStack;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineConfig {
    pub techniques: Vec<TechniqueId>,
    /// Repeat the whole technique list until a full pass changes nothing.
    pub global_fixpoint: bool,
    pub ve_growth_bound: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub formula: CnfFormula,
    pub stack: ReconstructionStack,
    pub report: ElimReport,
    /// The empty clause was derived (or given); the formula is unsatisfiable.
    pub unsat: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("technique {0} is listed more than once")]
    DuplicateTechnique(TechniqueId),
}

/// Runs one technique to its fixpoint. Returns true once `f` contains the
/// empty clause; techniques that detect unsatisfiability without deriving it
/// add it.
pub fn apply_technique(
    f: &mut CnfFormula,
    t: TechniqueId,
    stack: &mut ReconstructionStack,
    report: &mut ElimReport,
    ve_growth_bound: usize,
) -> bool {
    if let Some((family, mode)) = t.family() {
        eliminate_in_order(f, family, mode, stack, report, &ScanOrder::Ascending);
        return f.has_empty_clause();
    }
    report.record(t, f, |f| {
        let (unsat, rounds) = match t {
            TechniqueId::Pl => {
                pure_literal_elim(f, stack);
                (false, 1)
            }
            TechniqueId::Fle => (failed_literal_probe(f).is_err(), 1),
            TechniqueId::Els => match equivalent_literal_substitution(f) {
                Substitution::Substituted(map) => {
                    stack.push_equivalences(&map);
                    (false, 1)
                }
                Substitution::Unsat => (true, 1),
            },
            TechniqueId::Ve => {
                bounded_variable_elim(f, ve_growth_bound, stack);
                (false, 1)
            }
            _ => unreachable!("clause elimination handled above"),
        };
        if unsat && !f.has_empty_clause() {
            f.add_clause(Clause::new(&[]));
        }
        ((), rounds)
    });
    f.has_empty_clause()
}

/// Applies each configured technique to fixpoint, in order. Stops as soon as
/// the empty clause is present.
pub fn run_pipeline(f: CnfFormula, config: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    let mut seen = BTreeSet::new();
    for &t in &config.techniques {
        if !seen.insert(t) {
            return Err(PipelineError::DuplicateTechnique(t));
        }
    }
    let mut f = f;
    let mut stack = ReconstructionStack::new();
    let mut report = ElimReport {
        vars: f.num_vars(),
        clauses_before: f.len(),
        ..ElimReport::default()
    };
    let mut unsat = f.has_empty_clause();
    'outer: while !unsat {
        let before = f.mutation_counts();
        for &t in &config.techniques {
            if apply_technique(&mut f, t, &mut stack, &mut report, config.ve_growth_bound) {
                unsat = true;
                break 'outer;
            }
        }
        if !config.global_fixpoint || f.mutation_counts() == before {
            break;
        }
    }
    report.clauses_after = f.len();
    Ok(PipelineOutput {
        formula: f,
        stack,
        report,
        unsat,
    })
}
