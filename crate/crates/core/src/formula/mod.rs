// SPDX-License-Identifier: Apache-2.0

//! CNF data model: literals, clauses, formulas with occurrence lists, and
//! partial assignments.
//!
//! Clauses live in id-indexed slots so that removing one clause never
//! disturbs the identity of the others. The occurrence index maps every
//! literal to the ids of the live clauses containing it and is kept exactly
//! in sync by [`CnfFormula::add_clause`] and [`CnfFormula::remove_clause`].

mod bcp;
mod big;
mod simplify;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Not;

pub use bcp::{bcp, Propagation};
pub use big::{build_big, equivalent_literal_substitution, BinaryImplicationGraph, Substitution};
pub use simplify::{bounded_variable_elim, failed_literal_probe, pure_literal_elim, Unsat};

/// A signed variable. Variables are numbered from 1.
///
/// The internal code is `2 * (var - 1) + negative`, so the derived ordering is
/// the canonical `(var, sign)` order with the positive phase first.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: u32, positive: bool) -> Literal {
        assert!(var >= 1, "variables are numbered from 1");
        Literal(((var - 1) << 1) | u32::from(!positive))
    }

    /// Builds a literal from its DIMACS integer. Panics on 0.
    pub fn from_dimacs(value: i32) -> Literal {
        assert!(value != 0, "0 is not a literal");
        Literal::new(value.unsigned_abs(), value > 0)
    }

    pub fn var(self) -> u32 {
        (self.0 >> 1) + 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var() as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Dense index suitable for per-literal tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Literal {
        Literal(index as u32)
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A duplicate-free, canonically sorted set of literals.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

/// Sorts and deduplicates `raw`, reporting whether it contains a
/// complementary pair.
pub fn normalize_clause(raw: &[Literal]) -> (Clause, bool) {
    let mut lits = raw.to_vec();
    lits.sort_unstable();
    lits.dedup();
    let clause = Clause { lits };
    let taut = clause.is_tautology();
    (clause, taut)
}

impl Clause {
    pub fn new(raw: &[Literal]) -> Clause {
        normalize_clause(raw).0
    }

    pub fn from_dimacs(raw: &[i32]) -> Clause {
        let lits: Vec<Literal> = raw.iter().map(|&v| Literal::from_dimacs(v)).collect();
        Clause::new(&lits)
    }

    pub fn lits(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// True iff the clause contains some literal together with its complement.
    pub fn is_tautology(&self) -> bool {
        // complementary literals are adjacent in canonical order
        self.lits.windows(2).any(|w| w[0] == !w[1])
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    /// Resolvent of `self` (containing `pivot`) and `other` (containing
    /// `!pivot`).
    pub fn resolve(&self, other: &Clause, pivot: Literal) -> Clause {
        let raw: Vec<Literal> = self
            .lits
            .iter()
            .copied()
            .filter(|&l| l != pivot)
            .chain(other.lits.iter().copied().filter(|&l| l != !pivot))
            .collect();
        Clause::new(&raw)
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var()).max().unwrap_or(0)
    }

    pub fn to_dimacs(&self) -> Vec<i32> {
        self.lits.iter().map(|l| l.to_dimacs()).collect()
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Stable identifier of a clause slot inside one [`CnfFormula`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseId(usize);

impl ClauseId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A clause multiset with an exact occurrence index.
#[derive(Clone, Default)]
pub struct CnfFormula {
    slots: Vec<Option<Clause>>,
    occ: Vec<BTreeSet<ClauseId>>,
    units: BTreeSet<ClauseId>,
    empties: BTreeSet<ClauseId>,
    num_vars: u32,
    live: usize,
    added: u64,
    removed: u64,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> CnfFormula {
        let mut f = CnfFormula::default();
        f.set_num_vars(num_vars);
        f
    }

    /// Convenience constructor from DIMACS-style integer clauses. The variable
    /// count is the largest variable mentioned.
    pub fn from_dimacs(clauses: &[&[i32]]) -> CnfFormula {
        let clauses: Vec<Clause> = clauses.iter().map(|c| Clause::from_dimacs(c)).collect();
        let n = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        CnfFormula::from_clauses(n, clauses)
    }

    pub fn from_clauses(num_vars: u32, clauses: impl IntoIterator<Item = Clause>) -> CnfFormula {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.add_clause(c);
        }
        f
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Grows (never shrinks) the variable range.
    pub fn set_num_vars(&mut self, num_vars: u32) {
        if num_vars > self.num_vars {
            self.num_vars = num_vars;
            self.occ.resize(2 * num_vars as usize, BTreeSet::new());
        }
    }

    pub fn add_clause(&mut self, clause: Clause) -> ClauseId {
        self.set_num_vars(clause.max_var());
        let id = ClauseId(self.slots.len());
        self.index_clause(id, &clause);
        self.slots.push(Some(clause));
        self.live += 1;
        self.added += 1;
        id
    }

    pub fn add_dimacs(&mut self, raw: &[i32]) -> ClauseId {
        self.add_clause(Clause::from_dimacs(raw))
    }

    /// Removes a live clause. Panics if `id` is not live.
    pub fn remove_clause(&mut self, id: ClauseId) -> Clause {
        let clause = self.slots[id.0].take().expect("clause is live");
        for &l in clause.lits() {
            self.occ[l.index()].remove(&id);
        }
        match clause.len() {
            0 => {
                self.empties.remove(&id);
            }
            1 => {
                self.units.remove(&id);
            }
            _ => {}
        }
        self.live -= 1;
        self.removed += 1;
        clause
    }

    /// Replaces the literals of a live clause, keeping its id.
    pub fn replace_clause(&mut self, id: ClauseId, clause: Clause) -> Clause {
        let old = self.remove_clause(id);
        self.set_num_vars(clause.max_var());
        self.index_clause(id, &clause);
        self.slots[id.0] = Some(clause);
        self.live += 1;
        self.added += 1;
        old
    }

    fn index_clause(&mut self, id: ClauseId, clause: &Clause) {
        for &l in clause.lits() {
            self.occ[l.index()].insert(id);
        }
        match clause.len() {
            0 => {
                self.empties.insert(id);
            }
            1 => {
                self.units.insert(id);
            }
            _ => {}
        }
    }

    pub fn clause(&self, id: ClauseId) -> Option<&Clause> {
        self.slots.get(id.0).and_then(Option::as_ref)
    }

    pub fn is_live(&self, id: ClauseId) -> bool {
        self.clause(id).is_some()
    }

    /// Live clauses in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &Clause)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (ClauseId(i), c)))
    }

    pub fn ids(&self) -> Vec<ClauseId> {
        self.iter().map(|(id, _)| id).collect()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn literal_count(&self) -> usize {
        self.iter().map(|(_, c)| c.len()).sum()
    }

    pub fn occurrences(&self, lit: Literal) -> &BTreeSet<ClauseId> {
        &self.occ[lit.index()]
    }

    pub fn occurrence_count(&self, lit: Literal) -> usize {
        self.occ.get(lit.index()).map_or(0, BTreeSet::len)
    }

    pub fn unit_ids(&self) -> &BTreeSet<ClauseId> {
        &self.units
    }

    pub fn has_empty_clause(&self) -> bool {
        !self.empties.is_empty()
    }

    pub fn max_var(&self) -> u32 {
        self.iter().map(|(_, c)| c.max_var()).max().unwrap_or(0)
    }

    /// Total clause additions and removals performed on this value so far.
    pub fn mutation_counts(&self) -> (u64, u64) {
        (self.added, self.removed)
    }

    /// The clause multiset in canonical (sorted) order, ignoring ids.
    pub fn clause_multiset(&self) -> Vec<Clause> {
        let mut v: Vec<Clause> = self.iter().map(|(_, c)| c.clone()).collect();
        v.sort();
        v
    }

    /// Rebuilds the occurrence, unit and empty-clause indices from scratch
    /// and compares them with the incrementally maintained ones.
    pub fn check_index(&self) -> bool {
        let mut fresh = CnfFormula::new(self.num_vars);
        fresh.slots = vec![None; self.slots.len()];
        for (id, c) in self.iter() {
            fresh.index_clause(id, c);
        }
        fresh.occ == self.occ
            && fresh.units == self.units
            && fresh.empties == self.empties
            && self.live == self.iter().count()
    }

    pub fn to_dimacs(&self) -> Vec<Vec<i32>> {
        self.iter().map(|(_, c)| c.to_dimacs()).collect()
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Partial truth assignment over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new(num_vars: u32) -> Assignment {
        Assignment {
            values: vec![None; num_vars as usize + 1],
        }
    }

    /// Total assignment where `model[i]` is the value of variable `i + 1`.
    pub fn from_bools(model: &[bool]) -> Assignment {
        let mut a = Assignment::new(model.len() as u32);
        for (i, &b) in model.iter().enumerate() {
            a.values[i + 1] = Some(b);
        }
        a
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len().max(1) - 1) as u32
    }

    pub fn resize(&mut self, num_vars: u32) {
        self.values.resize(num_vars as usize + 1, None);
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize).copied().flatten()
    }

    pub fn set_var(&mut self, var: u32, value: bool) {
        if var as usize >= self.values.len() {
            self.resize(var);
        }
        self.values[var as usize] = Some(value);
    }

    pub fn unset(&mut self, var: u32) {
        if let Some(v) = self.values.get_mut(var as usize) {
            *v = None;
        }
    }

    pub fn value(&self, lit: Literal) -> Option<bool> {
        self.get(lit.var()).map(|b| b == lit.is_positive())
    }

    /// Makes `lit` true.
    pub fn assign(&mut self, lit: Literal) {
        self.set_var(lit.var(), lit.is_positive());
    }

    pub fn is_true(&self, lit: Literal) -> bool {
        self.value(lit) == Some(true)
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().skip(1).all(Option::is_some)
    }

    /// Assigns `false` to every unassigned variable.
    pub fn complete_with_false(&mut self) {
        for v in self.values.iter_mut().skip(1) {
            v.get_or_insert(false);
        }
    }

    pub fn satisfies_clause(&self, clause: &Clause) -> bool {
        clause.lits().iter().any(|&l| self.is_true(l))
    }

    pub fn falsifies_clause(&self, clause: &Clause) -> bool {
        clause.lits().iter().all(|&l| self.value(l) == Some(false))
    }

    pub fn satisfies(&self, f: &CnfFormula) -> bool {
        f.iter().all(|(_, c)| self.satisfies_clause(c))
    }

    /// The literals made true, in variable order.
    pub fn true_literals(&self) -> Vec<Literal> {
        (1..self.values.len() as u32)
            .filter_map(|v| self.get(v).map(|b| Literal::new(v, b)))
            .collect()
    }

    pub fn assigned_count(&self) -> usize {
        self.values.iter().skip(1).filter(|v| v.is_some()).count()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.true_literals()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(v: &[i32]) -> Vec<Literal> {
        v.iter().map(|&x| Literal::from_dimacs(x)).collect()
    }

    #[test]
    fn literal_roundtrip_and_order() {
        for v in [1, -1, 7, -300] {
            assert_eq!(Literal::from_dimacs(v).to_dimacs(), v);
            assert_eq!(!!Literal::from_dimacs(v), Literal::from_dimacs(v));
        }
        let mut l = lits(&[-2, 2, -1, 1]);
        l.sort();
        assert_eq!(l, lits(&[1, -1, 2, -2]));
    }

    #[test]
    fn normalize_examples() {
        let (c, t) = normalize_clause(&lits(&[1, 1, 2]));
        assert_eq!(c.to_dimacs(), vec![1, 2]);
        assert!(!t);
        let (c, t) = normalize_clause(&lits(&[1, -1]));
        assert_eq!(c.to_dimacs(), vec![1, -1]);
        assert!(t);
        let (c, t) = normalize_clause(&[]);
        assert!(c.is_empty());
        assert!(!t);
    }

    #[test]
    fn resolvent() {
        let a = Clause::from_dimacs(&[1, 2]);
        let b = Clause::from_dimacs(&[-1, 3]);
        assert_eq!(a.resolve(&b, Literal::from_dimacs(1)).to_dimacs(), vec![2, 3]);
    }

    #[test]
    fn index_tracks_mutations() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[-1], &[], &[2, 3]]);
        assert!(f.has_empty_clause());
        assert_eq!(f.unit_ids().len(), 1);
        let ids = f.ids();
        f.remove_clause(ids[2]);
        f.replace_clause(ids[0], Clause::from_dimacs(&[4]));
        assert!(!f.has_empty_clause());
        assert_eq!(f.unit_ids().len(), 2);
        assert_eq!(f.num_vars(), 4);
        assert!(f.check_index());
        assert_eq!(f.occurrence_count(Literal::from_dimacs(2)), 1);
    }

    #[test]
    fn assignment_basics() {
        let mut a = Assignment::new(3);
        a.assign(Literal::from_dimacs(-2));
        assert_eq!(a.value(Literal::from_dimacs(2)), Some(false));
        assert!(a.is_true(Literal::from_dimacs(-2)));
        assert!(!a.is_total());
        a.complete_with_false();
        assert!(a.is_total());
        assert!(a.falsifies_clause(&Clause::from_dimacs(&[1, 2])));
    }
}
