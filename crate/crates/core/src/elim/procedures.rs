// SPDX-License-Identifier: Apache-2.0

use super::extend::WorkClause;
use super::{ElimReport, ExtensionMode, Family, TechniqueId};
use crate::formula::{Clause, ClauseId, CnfFormula, Literal};
use crate::reconstruct::{ReconstructionStack, WitnessStep};

/// Order in which each fixpoint round visits clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ScanOrder {
    #[default]
    Ascending,
    /// Listed ids first, in the given order; any other live clause follows in
    /// ascending id order.
    Given(Vec<ClauseId>),
}

impl ScanOrder {
    fn ids(&self, f: &CnfFormula) -> Vec<ClauseId> {
        match self {
            ScanOrder::Ascending => f.ids(),
            ScanOrder::Given(order) => {
                let mut seen = vec![false; f.ids().last().map_or(0, |id| id.index() + 1)];
                let mut out = Vec::with_capacity(f.len());
                for &id in order {
                    if f.is_live(id) && !seen[id.index()] {
                        seen[id.index()] = true;
                        out.push(id);
                    }
                }
                out.extend(f.ids().into_iter().filter(|id| !seen[id.index()]));
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveredOutcome {
    Extended(Clause),
    Removable(Literal),
}

pub fn is_tautology(c: &Clause) -> bool {
    c.is_tautology()
}

fn scratch_for(f: &CnfFormula, c: &Clause) -> WorkClause {
    WorkClause::new(f.num_vars().max(c.max_var()))
}

/// Resolvent of the working clause (on `l`) with `d` (on `¬l`) is a tautology.
fn resolvent_is_tautology(w: &WorkClause, l: Literal, d: &Clause) -> bool {
    let pivot = !l;
    d.lits().iter().any(|&x| x != pivot && w.contains(!x))
        || d
            .lits()
            .windows(2)
            .any(|p| p[0] == !p[1] && p[0].var() != l.var())
}

fn find_blocking(f: &CnfFormula, w: &WorkClause, exclude: Option<ClauseId>) -> Option<Literal> {
    w.sorted().into_iter().find(|&l| {
        f.occurrences(!l).iter().all(|&id| {
            Some(id) == exclude || resolvent_is_tautology(w, l, f.clause(id).expect("live"))
        })
    })
}

/// The smallest literal of `c` on which every resolvent against `f` (minus
/// clause `exclude`) is a tautology.
pub fn blocking_literal(f: &CnfFormula, c: &Clause, exclude: Option<ClauseId>) -> Option<Literal> {
    let mut w = scratch_for(f, c);
    w.load(c.lits());
    find_blocking(f, &w, exclude)
}

/// Covered literal addition to fixpoint on the working clause. Pushes one
/// step per addition (snapshot before the addition, pivot literal) and
/// returns the blocking witness once the clause becomes blocked; in that case
/// the final step has already been pushed.
fn covered_additions(
    f: &CnfFormula,
    w: &mut WorkClause,
    exclude: Option<ClauseId>,
    steps: &mut Vec<WitnessStep>,
    added: &mut u64,
) -> Option<Literal> {
    loop {
        let mut changed = false;
        for l in w.sorted() {
            let mut common: Option<Vec<Literal>> = None;
            for &id in f.occurrences(!l) {
                if Some(id) == exclude {
                    continue;
                }
                let d = f.clause(id).expect("live");
                if resolvent_is_tautology(w, l, d) {
                    continue;
                }
                common = Some(match common {
                    None => d
                        .lits()
                        .iter()
                        .copied()
                        .filter(|&x| x != !l && !w.contains(x))
                        .collect(),
                    Some(prev) => prev.into_iter().filter(|&x| d.contains(x)).collect(),
                });
                if common.as_ref().is_some_and(Vec::is_empty) {
                    break;
                }
            }
            match common {
                None => {
                    steps.push(WitnessStep {
                        clause: w.clause(),
                        witness: l,
                    });
                    return Some(l);
                }
                Some(v) if v.is_empty() => {}
                Some(v) => {
                    steps.push(WitnessStep {
                        clause: w.clause(),
                        witness: l,
                    });
                    for x in v {
                        if w.insert(x) {
                            *added += 1;
                        }
                    }
                    changed = true;
                    if w.is_tautology() {
                        return Some(l);
                    }
                }
            }
        }
        if !changed {
            return None;
        }
    }
}

/// Covered literal addition for the live clause `id`, without any hidden or
/// asymmetric extension.
pub fn covered_literal_additions(f: &CnfFormula, id: ClauseId) -> CoveredOutcome {
    let c = f.clause(id).expect("clause is live");
    let mut w = scratch_for(f, c);
    w.load(c.lits());
    let mut steps = Vec::new();
    let mut added = 0;
    match covered_additions(f, &mut w, Some(id), &mut steps, &mut added) {
        Some(l) => CoveredOutcome::Removable(l),
        None => CoveredOutcome::Extended(w.clause()),
    }
}

enum Verdict {
    Keep,
    /// Implied by the rest of the formula: plain deletion.
    Implied,
    Witness(Vec<WitnessStep>),
}

fn is_subsumed(f: &CnfFormula, c: &Clause, id: ClauseId, w: &WorkClause) -> bool {
    if f.has_empty_clause() {
        if !c.is_empty() {
            return true;
        }
        return f.iter().any(|(j, d)| j < id && d.is_empty());
    }
    for m in w.sorted() {
        for &j in f.occurrences(m) {
            if j == id {
                continue;
            }
            let d = f.clause(j).expect("live");
            // visit each candidate once, through its first literal
            if d.lits()[0] != m || !d.lits().iter().all(|&x| w.contains(x)) {
                continue;
            }
            if d != c || j < id {
                return true;
            }
        }
    }
    false
}

fn check_clause(
    f: &CnfFormula,
    id: ClauseId,
    family: Family,
    mode: ExtensionMode,
    w: &mut WorkClause,
    added: &mut u64,
) -> Verdict {
    let c = f.clause(id).expect("live");
    w.load(c.lits());
    if w.is_tautology() && family != Family::Subsumption {
        return Verdict::Implied;
    }
    match family {
        Family::Tautology => {
            *added += w.extend(f, Some(id), mode, true) as u64;
            if w.is_tautology() {
                Verdict::Implied
            } else {
                Verdict::Keep
            }
        }
        Family::Subsumption => {
            *added += w.extend(f, Some(id), mode, false) as u64;
            if is_subsumed(f, c, id, w) {
                Verdict::Implied
            } else {
                Verdict::Keep
            }
        }
        Family::Blocked => {
            *added += w.extend(f, Some(id), mode, true) as u64;
            if w.is_tautology() {
                return Verdict::Implied;
            }
            match find_blocking(f, w, Some(id)) {
                Some(l) => Verdict::Witness(vec![WitnessStep {
                    clause: w.clause(),
                    witness: l,
                }]),
                None => Verdict::Keep,
            }
        }
        Family::Covered => {
            let mut steps = Vec::new();
            loop {
                *added += w.extend(f, Some(id), mode, true) as u64;
                if w.is_tautology() {
                    return if steps.is_empty() {
                        Verdict::Implied
                    } else {
                        Verdict::Witness(steps)
                    };
                }
                let before = w.len();
                if covered_additions(f, w, Some(id), &mut steps, added).is_some() {
                    return Verdict::Witness(steps);
                }
                if w.len() == before || mode == ExtensionMode::None {
                    return Verdict::Keep;
                }
            }
        }
    }
}

/// Whether the live clause `id` meets the removal criterion of `family`
/// under `mode` with respect to the rest of `f`.
pub fn is_removable(f: &CnfFormula, id: ClauseId, family: Family, mode: ExtensionMode) -> bool {
    let mut w = WorkClause::new(f.num_vars());
    !matches!(check_clause(f, id, family, mode, &mut w, &mut 0), Verdict::Keep)
}

/// Runs one elimination family with the given extension mode to fixpoint,
/// visiting clauses in `order` each round. Returns the number of clauses
/// removed.
pub fn eliminate_in_order(
    f: &mut CnfFormula,
    family: Family,
    mode: ExtensionMode,
    stack: &mut ReconstructionStack,
    report: &mut ElimReport,
    order: &ScanOrder,
) -> usize {
    let t = TechniqueId::of(family, mode);
    let mut w = WorkClause::new(f.num_vars());
    let mut added = 0u64;
    let removed = report.record(t, f, |f| {
        let mut rounds = 0;
        let mut removed = 0;
        loop {
            rounds += 1;
            let mut changed = false;
            for id in order.ids(f) {
                if !f.is_live(id) {
                    continue;
                }
                match check_clause(f, id, family, mode, &mut w, &mut added) {
                    Verdict::Keep => continue,
                    Verdict::Implied => {
                        f.remove_clause(id);
                    }
                    Verdict::Witness(steps) => {
                        f.remove_clause(id);
                        stack.push_witness_steps(steps);
                    }
                }
                removed += 1;
                changed = true;
            }
            if !changed {
                return (removed, rounds);
            }
        }
    });
    report.entry(t).literals_added += added;
    removed
}

/// TE, HTE or ATE.
pub fn eliminate_tautologies(f: &mut CnfFormula, mode: ExtensionMode, report: &mut ElimReport) -> usize {
    let mut unused = ReconstructionStack::new();
    eliminate_in_order(f, Family::Tautology, mode, &mut unused, report, &ScanOrder::Ascending)
}

/// SE, HSE or ASE. Of two identical clauses the one with the lower id stays.
pub fn eliminate_subsumed(f: &mut CnfFormula, mode: ExtensionMode, report: &mut ElimReport) -> usize {
    let mut unused = ReconstructionStack::new();
    eliminate_in_order(f, Family::Subsumption, mode, &mut unused, report, &ScanOrder::Ascending)
}

/// BCE, HBCE or ABCE.
pub fn eliminate_blocked(
    f: &mut CnfFormula,
    mode: ExtensionMode,
    stack: &mut ReconstructionStack,
    report: &mut ElimReport,
) -> usize {
    eliminate_in_order(f, Family::Blocked, mode, stack, report, &ScanOrder::Ascending)
}

pub fn eliminate_blocked_in_order(
    f: &mut CnfFormula,
    mode: ExtensionMode,
    stack: &mut ReconstructionStack,
    report: &mut ElimReport,
    order: &ScanOrder,
) -> usize {
    eliminate_in_order(f, Family::Blocked, mode, stack, report, order)
}

/// CCE, HCCE or ACCE. The extension of `mode` and covered literal addition
/// alternate until neither changes the working clause.
pub fn eliminate_covered(
    f: &mut CnfFormula,
    mode: ExtensionMode,
    stack: &mut ReconstructionStack,
    report: &mut ElimReport,
) -> usize {
    eliminate_in_order(f, Family::Covered, mode, stack, report, &ScanOrder::Ascending)
}
