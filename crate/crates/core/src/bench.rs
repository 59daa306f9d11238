// SPDX-License-Identifier: Apache-2.0

//! Benchmark families: pigeonhole, extended pigeonhole and parity rings.

use crate::circuit::{Circuit, GateFunc};
use crate::formula::{Clause, CnfFormula, Literal};

/// Variable of "pigeon `i` sits in hole `j`" for `n` holes, 1-based.
pub fn php_var(n: u32, pigeon: u32, hole: u32) -> u32 {
    (pigeon - 1) * n + hole
}

/// Clause count of `gen_php(n)`: `(n+1) + n * (n+1) * n / 2`.
pub fn php_clause_count(n: u32) -> usize {
    let n = n as usize;
    (n + 1) + n * (n + 1) * n / 2
}

/// `n + 1` pigeons into `n` holes. Panics if `n == 0`.
pub fn gen_php(n: u32) -> CnfFormula {
    assert!(n >= 1, "pigeonhole needs at least one hole");
    let mut f = CnfFormula::new(n * (n + 1));
    for i in 1..=n + 1 {
        let lits: Vec<Literal> = (1..=n).map(|j| Literal::new(php_var(n, i, j), true)).collect();
        f.add_clause(Clause::new(&lits));
    }
    for k in 1..=n {
        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                f.add_clause(Clause::new(&[
                    Literal::new(php_var(n, i, k), false),
                    Literal::new(php_var(n, j, k), false),
                ]));
            }
        }
    }
    f
}

/// Number of extension variables added by `gen_ephp(n)`.
pub fn ephp_extension_vars(n: u32) -> u32 {
    (1..n).map(|m| (m + 1) * m).sum()
}

/// Pigeonhole plus the extension definitions
/// `q[m](i,j) <-> q[m+1](i,j) ∨ (q[m+1](i,m+1) ∧ q[m+1](m+2,j))`
/// for levels `m = n-1 .. 1`, with level `n` being the pigeonhole variables.
/// Each definition yields four clauses. Panics if `n < 2`.
pub fn gen_ephp(n: u32) -> CnfFormula {
    assert!(n >= 2, "extended pigeonhole needs n >= 2");
    let mut f = gen_php(n);
    // var(level, i, j); level n is the base layer
    let mut level_base: Vec<u32> = vec![0; n as usize + 1];
    let mut next = n * (n + 1) + 1;
    for m in (1..n).rev() {
        level_base[m as usize] = next;
        next += (m + 1) * m;
    }
    let var = |m: u32, i: u32, j: u32| -> u32 {
        if m == n {
            php_var(n, i, j)
        } else {
            level_base[m as usize] + (i - 1) * m + (j - 1)
        }
    };
    f.set_num_vars(next - 1);
    for m in (1..n).rev() {
        for i in 1..=m + 1 {
            for j in 1..=m {
                let q = Literal::new(var(m, i, j), true);
                let a = Literal::new(var(m + 1, i, j), true);
                let b = Literal::new(var(m + 1, i, m + 1), true);
                let c = Literal::new(var(m + 1, m + 2, j), true);
                f.add_clause(Clause::new(&[!q, a, b]));
                f.add_clause(Clause::new(&[!q, a, c]));
                f.add_clause(Clause::new(&[q, !a]));
                f.add_clause(Clause::new(&[q, !b, !c]));
            }
        }
    }
    f
}

/// Parity ring `x_i ⊕ x_{i+1}` for `i < n` and `x_n ⊕ x_1`, two clauses per
/// equation. Unsatisfiable iff `n` is odd; for `n = 1` the single equation
/// `x_1 ⊕ x_1` collapses to the units `x_1` and `¬x_1`. Panics if `n == 0`.
pub fn gen_xor_unsat(n: u32) -> CnfFormula {
    assert!(n >= 1, "parity ring needs n >= 1");
    let mut f = CnfFormula::new(n);
    for i in 1..=n {
        let x = Literal::new(i, true);
        let y = Literal::new(i % n + 1, true);
        f.add_clause(Clause::new(&[x, y]));
        f.add_clause(Clause::new(&[!x, !y]));
    }
    f
}

/// The parity ring as a circuit: one binary XOR gate per equation, each
/// constrained true. Panics if `n == 0`.
pub fn gen_xor_ring_circuit(n: u32) -> Circuit {
    assert!(n >= 1, "parity ring needs n >= 1");
    let mut c = Circuit::new();
    let xs: Vec<_> = (1..=n).map(|i| c.input(&format!("x{i}"))).collect();
    for i in 0..n as usize {
        let g = c
            .add_gate(
                &format!("e{}", i + 1),
                GateFunc::Xor,
                vec![xs[i], xs[(i + 1) % n as usize]],
            )
            .expect("fresh name");
        c.constrain(g, true);
    }
    c
}
