// SPDX-License-Identifier: Apache-2.0

//! Unit propagation over occurrence lists.

use super::{Assignment, Clause, CnfFormula, Literal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// The closure of the input assignment under unit propagation.
    Fixpoint(Assignment),
    Conflict,
}

impl Propagation {
    pub fn is_conflict(&self) -> bool {
        matches!(self, Propagation::Conflict)
    }
}

enum Status {
    Satisfied,
    Falsified,
    Unit(Literal),
    Open,
}

fn status(clause: &Clause, a: &Assignment) -> Status {
    let mut free = None;
    let mut free_count = 0;
    for &l in clause.lits() {
        match a.value(l) {
            Some(true) => return Status::Satisfied,
            Some(false) => {}
            None => {
                free_count += 1;
                free = Some(l);
            }
        }
    }
    match (free_count, free) {
        (0, _) => Status::Falsified,
        (1, Some(l)) => Status::Unit(l),
        _ => Status::Open,
    }
}

/// Closes `a` under unit propagation on `f`.
///
/// Every clause is inspected once up front; afterwards only clauses in the
/// occurrence list of a newly falsified literal are revisited.
pub fn bcp(f: &CnfFormula, a: &Assignment) -> Propagation {
    let mut a = a.clone();
    if a.num_vars() < f.num_vars() {
        a.resize(f.num_vars());
    }
    let mut queue: Vec<Literal> = Vec::new();

    for (_, clause) in f.iter() {
        match status(clause, &a) {
            Status::Falsified => return Propagation::Conflict,
            Status::Unit(l) => {
                a.assign(l);
                queue.push(l);
            }
            _ => {}
        }
    }

    while let Some(l) = queue.pop() {
        for &id in f.occurrences(!l) {
            let clause = f.clause(id).expect("occurrence lists only hold live clauses");
            match status(clause, &a) {
                Status::Falsified => return Propagation::Conflict,
                Status::Unit(u) => {
                    a.assign(u);
                    queue.push(u);
                }
                _ => {}
            }
        }
    }
    Propagation::Fixpoint(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lit(v: i32) -> Literal {
        Literal::from_dimacs(v)
    }

    fn fixpoint(p: Propagation) -> Assignment {
        match p {
            Propagation::Fixpoint(a) => a,
            Propagation::Conflict => panic!("unexpected conflict"),
        }
    }

    #[test]
    fn single_unit() {
        let f = CnfFormula::from_dimacs(&[&[1]]);
        let a = fixpoint(bcp(&f, &Assignment::new(1)));
        assert_eq!(a.value(lit(1)), Some(true));
    }

    #[test]
    fn chained_units() {
        let f = CnfFormula::from_dimacs(&[&[1], &[-1, 2]]);
        let a = fixpoint(bcp(&f, &Assignment::new(2)));
        assert_eq!(a.true_literals(), vec![lit(1), lit(2)]);
    }

    #[test]
    fn complementary_units_conflict() {
        let f = CnfFormula::from_dimacs(&[&[1], &[-1]]);
        assert!(bcp(&f, &Assignment::new(1)).is_conflict());
    }

    #[test]
    fn empty_clause_conflicts() {
        let f = CnfFormula::from_dimacs(&[&[]]);
        assert!(bcp(&f, &Assignment::new(0)).is_conflict());
    }

    /// Naive reference: rescan every clause until nothing changes.
    fn naive(f: &CnfFormula, a: &Assignment) -> Propagation {
        let mut a = a.clone();
        a.resize(f.num_vars());
        loop {
            let mut changed = false;
            for (_, c) in f.iter() {
                match status(c, &a) {
                    Status::Falsified => return Propagation::Conflict,
                    Status::Unit(l) => {
                        a.assign(l);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Propagation::Fixpoint(a);
            }
        }
    }

    fn arb_formula() -> impl Strategy<Value = CnfFormula> {
        let lit = (1i32..=6, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        prop::collection::vec(prop::collection::vec(lit, 1..4), 0..14).prop_map(|cs| {
            let mut f = CnfFormula::new(6);
            for c in cs {
                f.add_dimacs(&c);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn matches_naive_fixpoint(f in arb_formula(), seed in prop::collection::vec(-6i32..=6, 0..3)) {
            let mut a = Assignment::new(6);
            for v in seed.into_iter().filter(|&v| v != 0) {
                a.assign(lit(v));
            }
            prop_assert_eq!(bcp(&f, &a), naive(&f, &a));
        }

        #[test]
        fn monotone(f in arb_formula(), x in 1i32..=6, y in 1i32..=6) {
            let mut small = Assignment::new(6);
            small.assign(lit(x));
            let mut big = small.clone();
            if x != y {
                big.assign(lit(-y));
            }
            match (bcp(&f, &small), bcp(&f, &big)) {
                (Propagation::Fixpoint(s), Propagation::Fixpoint(b)) => {
                    for l in s.true_literals() {
                        prop_assert!(b.is_true(l));
                    }
                }
                (Propagation::Conflict, b) => prop_assert!(b.is_conflict()),
                _ => {}
            }
        }
    }
}
