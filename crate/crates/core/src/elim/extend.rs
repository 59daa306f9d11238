// SPDX-License-Identifier: Apache-2.0

//! Hidden and asymmetric literal addition.

use super::ExtensionMode;
use crate::formula::{Clause, ClauseId, CnfFormula, Literal};

/// Scratch literal set for a clause under extension. `F` itself is never
/// touched; the clause being tested is skipped through `exclude`.
pub(crate) struct WorkClause {
    marks: Vec<bool>,
    members: Vec<Literal>,
    taut: bool,
}

impl WorkClause {
    pub(crate) fn new(num_vars: u32) -> WorkClause {
        WorkClause {
            marks: vec![false; 2 * num_vars as usize],
            members: Vec::new(),
            taut: false,
        }
    }

    pub(crate) fn load(&mut self, lits: &[Literal]) {
        for &l in &self.members {
            self.marks[l.index()] = false;
        }
        self.members.clear();
        self.taut = false;
        for &l in lits {
            self.insert(l);
        }
    }

    pub(crate) fn insert(&mut self, lit: Literal) -> bool {
        if self.marks[lit.index()] {
            return false;
        }
        self.marks[lit.index()] = true;
        self.members.push(lit);
        if self.marks[(!lit).index()] {
            self.taut = true;
        }
        true
    }

    pub(crate) fn contains(&self, lit: Literal) -> bool {
        self.marks[lit.index()]
    }

    pub(crate) fn is_tautology(&self) -> bool {
        self.taut
    }

    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn sorted(&self) -> Vec<Literal> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    pub(crate) fn clause(&self) -> Clause {
        Clause::new(&self.members)
    }

    /// Extends to the least fixpoint of the given mode. With
    /// `stop_at_tautology` the extension may stop as soon as it contains a
    /// complementary pair. Returns the number of literals added.
    pub(crate) fn extend(
        &mut self,
        f: &CnfFormula,
        exclude: Option<ClauseId>,
        mode: ExtensionMode,
        stop_at_tautology: bool,
    ) -> usize {
        let start = self.members.len();
        if mode == ExtensionMode::None {
            return 0;
        }
        if mode == ExtensionMode::Asymmetric {
            // a unit (l) satisfies C' \ {l} ⊆ C for every C
            for &id in f.unit_ids() {
                if Some(id) != exclude {
                    let l = f.clause(id).expect("live").lits()[0];
                    self.insert(!l);
                }
            }
        }
        let mut next = 0;
        while next < self.members.len() {
            if stop_at_tautology && self.taut {
                break;
            }
            let m = self.members[next];
            next += 1;
            for &id in f.occurrences(m) {
                if Some(id) == exclude {
                    continue;
                }
                let other = f.clause(id).expect("live");
                match mode {
                    ExtensionMode::Hidden => {
                        if let [a, b] = *other.lits() {
                            let l = if a == m { b } else { a };
                            self.insert(!l);
                        }
                    }
                    ExtensionMode::Asymmetric => {
                        let mut missing = None;
                        let mut n_missing = 0;
                        for &l in other.lits() {
                            if !self.marks[l.index()] {
                                n_missing += 1;
                                missing = Some(l);
                                if n_missing > 1 {
                                    break;
                                }
                            }
                        }
                        match n_missing {
                            0 => {
                                for &l in other.lits() {
                                    self.insert(!l);
                                }
                            }
                            1 => {
                                self.insert(!missing.expect("one missing literal"));
                            }
                            _ => {}
                        }
                    }
                    ExtensionMode::None => unreachable!(),
                }
            }
        }
        self.members.len() - start
    }
}

/// Extends the live clause `id` of `f` by the literal-addition operator of
/// `mode`, computed against every other clause of `f`. Always returns the full
/// least fixpoint, which is a superset of the clause.
pub fn extend_clause(f: &CnfFormula, id: ClauseId, mode: ExtensionMode) -> Clause {
    let clause = f.clause(id).expect("clause is live");
    extend_literals(f, clause.lits(), Some(id), mode)
}

/// Like [`extend_clause`] for an arbitrary literal set, skipping the clause
/// `exclude` if given.
pub fn extend_literals(
    f: &CnfFormula,
    lits: &[Literal],
    exclude: Option<ClauseId>,
    mode: ExtensionMode,
) -> Clause {
    let mut work = WorkClause::new(f.num_vars().max(lits.iter().map(|l| l.var()).max().unwrap_or(0)));
    work.load(lits);
    work.extend(f, exclude, mode, false);
    work.clause()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(clauses: &[&[i32]], which: usize, mode: ExtensionMode) -> Vec<i32> {
        let f = CnfFormula::from_dimacs(clauses);
        let id = f.ids()[which];
        extend_clause(&f, id, mode).to_dimacs()
    }

    #[test]
    fn hidden_single_step() {
        assert_eq!(ext(&[&[1, 2], &[2, -3]], 0, ExtensionMode::Hidden), vec![1, 2, 3]);
    }

    #[test]
    fn hidden_alone() {
        assert_eq!(ext(&[&[1, 2]], 0, ExtensionMode::Hidden), vec![1, 2]);
    }

    #[test]
    fn asymmetric_reaches_tautology() {
        // the full fixpoint also adds -1 once (1,-2) lies inside the extension
        let e = ext(&[&[1], &[1, 2], &[1, -2]], 0, ExtensionMode::Asymmetric);
        assert_eq!(e, vec![1, -1, 2, -2]);
        assert!(Clause::from_dimacs(&e).is_tautology());
    }

    #[test]
    fn none_is_identity() {
        assert_eq!(ext(&[&[1, 2], &[2, -3]], 0, ExtensionMode::None), vec![1, 2]);
    }

    #[test]
    fn asymmetric_uses_units() {
        assert_eq!(ext(&[&[1, 2], &[3]], 0, ExtensionMode::Asymmetric), vec![1, 2, -3]);
        assert_eq!(ext(&[&[1, 2], &[3]], 0, ExtensionMode::Hidden), vec![1, 2]);
    }

    #[test]
    fn hidden_transitive_chain() {
        // 1 ∈ C; (1,-3) adds 3; (3,-4) adds 4
        assert_eq!(
            ext(&[&[1, 2], &[1, -3], &[3, -4]], 0, ExtensionMode::Hidden),
            vec![1, 2, 3, 4]
        );
    }
}
