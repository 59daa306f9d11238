// SPDX-License-Identifier: Apache-2.0

//! Binary implication graph and equivalent-literal substitution.

use std::collections::BTreeMap;

use super::{Clause, ClauseId, CnfFormula, Literal};

/// Implication digraph over all literals of a formula: every binary clause
/// `(a ∨ b)` contributes the edges `¬a → b` and `¬b → a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryImplicationGraph {
    succ: Vec<Vec<Literal>>,
}

impl BinaryImplicationGraph {
    pub fn num_literals(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, lit: Literal) -> &[Literal] {
        &self.succ[lit.index()]
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<(Literal, Literal)> {
        let mut e: Vec<(Literal, Literal)> = self
            .succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&t| (Literal::from_index(i), t)))
            .collect();
        e.sort();
        e
    }

    /// Strongly connected components in the order they are completed
    /// (reverse topological order of the condensation).
    pub fn components(&self) -> Vec<Vec<Literal>> {
        tarjan(&self.succ)
    }
}

pub fn build_big(f: &CnfFormula) -> BinaryImplicationGraph {
    let mut succ = vec![Vec::new(); 2 * f.num_vars() as usize];
    for (_, c) in f.iter() {
        if let [a, b] = *c.lits() {
            succ[(!a).index()].push(b);
            succ[(!b).index()].push(a);
        }
    }
    for s in &mut succ {
        s.sort();
        s.dedup();
    }
    BinaryImplicationGraph { succ }
}

/// Iterative Tarjan.
fn tarjan(succ: &[Vec<Literal>]) -> Vec<Vec<Literal>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, position in its successor list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                let w = w.index();
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(Literal::from_index(w));
                    if w == v {
                        break;
                    }
                }
                comp.sort();
                out.push(comp);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// Map from every replaced literal (both phases) to its representative.
    /// Literals absent from the map are their own representatives.
    Substituted(BTreeMap<Literal, Literal>),
    Unsat,
}

/// Replaces every literal by the representative of its strongly connected
/// component in the binary implication graph. The representative is the
/// component member with the smallest variable. Clauses that become
/// tautologies are removed; duplicate literals are merged.
pub fn equivalent_literal_substitution(f: &mut CnfFormula) -> Substitution {
    let big = build_big(f);
    let mut map = BTreeMap::new();
    for comp in big.components() {
        if comp.windows(2).any(|w| w[0] == !w[1]) {
            return Substitution::Unsat;
        }
        // canonical order puts the smallest variable first
        let rep = comp[0];
        for &l in &comp[1..] {
            map.insert(l, rep);
        }
    }
    if map.is_empty() {
        return Substitution::Substituted(map);
    }
    let ids: Vec<ClauseId> = f.ids();
    for id in ids {
        let clause = f.clause(id).expect("live");
        if !clause.lits().iter().any(|l| map.contains_key(l)) {
            continue;
        }
        let raw: Vec<Literal> = clause
            .lits()
            .iter()
            .map(|l| *map.get(l).unwrap_or(l))
            .collect();
        let new = Clause::new(&raw);
        if new.is_tautology() {
            f.remove_clause(id);
        } else {
            f.replace_clause(id, new);
        }
    }
    Substitution::Substituted(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lit(v: i32) -> Literal {
        Literal::from_dimacs(v)
    }

    fn edges(f: &CnfFormula) -> Vec<(i32, i32)> {
        build_big(f)
            .edges()
            .into_iter()
            .map(|(a, b)| (a.to_dimacs(), b.to_dimacs()))
            .collect()
    }

    #[test]
    fn big_single_binary() {
        let f = CnfFormula::from_dimacs(&[&[1, 2]]);
        let mut e = edges(&f);
        e.sort();
        assert_eq!(e, vec![(-2, 1), (-1, 2)]);
        assert!(edges(&CnfFormula::new(0)).is_empty());
    }

    #[test]
    fn big_equivalence_cycle() {
        let f = CnfFormula::from_dimacs(&[&[1, -2], &[2, -1]]);
        let mut got = edges(&f);
        got.sort();
        let mut want = vec![(-1, -2), (2, 1), (-2, -1), (1, 2)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn big_is_closed_under_contraposition() {
        let f = CnfFormula::from_dimacs(&[&[1, 2], &[-2, 3], &[3, -4], &[1, 2, 3]]);
        let g = build_big(&f);
        for (u, v) in g.edges() {
            assert!(g.successors(!v).contains(&!u));
        }
    }

    #[test]
    fn els_merges_equivalent_pair() {
        let mut f = CnfFormula::from_dimacs(&[&[1, -2], &[2, -1]]);
        let Substitution::Substituted(map) = equivalent_literal_substitution(&mut f) else {
            panic!("unexpected unsat");
        };
        assert_eq!(map.get(&lit(2)), Some(&lit(1)));
        assert_eq!(map.get(&lit(-2)), Some(&lit(-1)));
        assert!(f.is_empty());
    }

    #[test]
    fn els_negative_equivalence() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2], &[-1, -2]]);
        let Substitution::Substituted(map) = equivalent_literal_substitution(&mut f) else {
            panic!("unexpected unsat");
        };
        assert_eq!(map.get(&lit(2)), Some(&lit(-1)));
        assert_eq!(map.get(&lit(-2)), Some(&lit(1)));
        assert!(f.is_empty());
    }

    #[test]
    fn els_without_binaries_is_identity() {
        let mut f = CnfFormula::from_dimacs(&[&[1, 2, 3]]);
        assert_eq!(
            equivalent_literal_substitution(&mut f),
            Substitution::Substituted(BTreeMap::new())
        );
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn els_detects_complementary_component() {
        // 1 -> 2 -> -1 -> -2 -> 1
        let mut f = CnfFormula::from_dimacs(&[&[-1, 2], &[-2, -1], &[1, -2], &[2, 1]]);
        assert_eq!(equivalent_literal_substitution(&mut f), Substitution::Unsat);
        assert!(oracle::brute_force_sat(&f, &oracle::OracleBound::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn els_substitutes_longer_clauses() {
        let mut f = CnfFormula::from_dimacs(&[&[1, -2], &[-1, 2], &[2, 3, 4], &[-3, -2]]);
        let Substitution::Substituted(_) = equivalent_literal_substitution(&mut f) else {
            panic!("unexpected unsat");
        };
        let got: Vec<Vec<i32>> = f.clause_multiset().iter().map(Clause::to_dimacs).collect();
        assert_eq!(got, vec![vec![1, 3, 4], vec![-1, -3]]);
        assert!(f.check_index());
    }
}
