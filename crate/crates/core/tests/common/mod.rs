// SPDX-License-Identifier: Apache-2.0

//! Seeded random formulas and circuits shared by the integration suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cnfprep::circuit::{Circuit, GateFunc, GateId};
use cnfprep::formula::{Clause, CnfFormula};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_vars` variables, up to `max_clauses` clauses of width 1 to 4.
/// Literals within a clause are over distinct variables.
pub fn random_cnf(rng: &mut impl Rng, max_vars: u32, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let mut f = CnfFormula::new(n);
    let vars: Vec<u32> = (1..=n).collect();
    for _ in 0..m {
        let width = rng.gen_range(1..=4usize.min(n as usize));
        let lits: Vec<i32> = vars
            .choose_multiple(rng, width)
            .map(|&v| if rng.gen_bool(0.5) { v as i32 } else { -(v as i32) })
            .collect();
        f.add_clause(Clause::from_dimacs(&lits));
    }
    f
}

/// Up to 6 inputs and up to 10 further gates over every gate function.
/// Children are drawn from earlier gates, so the result is acyclic; up to
/// three gates are constrained.
pub fn random_circuit(rng: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new();
    let n_inputs = rng.gen_range(1..=6);
    let mut pool: Vec<GateId> = (0..n_inputs).map(|i| c.input(&format!("x{i}"))).collect();
    let n_gates = rng.gen_range(1..=10);
    for k in 0..n_gates {
        let pick = rng.gen_range(0..11);
        let (func, arity) = match pick {
            0 => (GateFunc::ConstTrue, 0),
            1 => (GateFunc::ConstFalse, 0),
            2 => (GateFunc::Not, 1),
            3 => (GateFunc::And, rng.gen_range(1..=3)),
            4 => (GateFunc::Or, rng.gen_range(1..=3)),
            5 => (GateFunc::Xor, rng.gen_range(1..=3)),
            6 => (GateFunc::Even, rng.gen_range(1..=3)),
            7 => (GateFunc::Equiv, rng.gen_range(1..=3)),
            8 => (GateFunc::Imply, 2),
            9 => (GateFunc::Ite, 3),
            _ => {
                let n = rng.gen_range(1..=4u32);
                let low = rng.gen_range(0..=n + 1);
                let high = rng.gen_range(low..=n + 1);
                (GateFunc::Card { low, high }, n as usize)
            }
        };
        // mostly distinct children, occasionally repeated ones
        let children: Vec<GateId> = if rng.gen_bool(0.85) && arity <= pool.len() {
            pool.choose_multiple(rng, arity).copied().collect()
        } else {
            (0..arity).map(|_| *pool.choose(rng).expect("nonempty pool")).collect()
        };
        let g = c.add_gate(&format!("g{k}"), func, children).expect("fresh name");
        pool.push(g);
    }
    let last = *pool.last().expect("nonempty pool");
    if rng.gen_bool(0.9) {
        c.constrain(last, rng.gen_bool(0.8));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let g = *pool.choose(rng).expect("nonempty pool");
        c.constrain(g, rng.gen_bool(0.7));
    }
    c
}

pub fn clause_set(f: &CnfFormula) -> BTreeSet<Clause> {
    f.iter().map(|(_, c)| c.clone()).collect()
}
