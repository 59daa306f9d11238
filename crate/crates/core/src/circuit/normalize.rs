// SPDX-License-Identifier: Apache-2.0

//! Rewrites a circuit into the gate vocabulary the encoders accept: no
//! cardinality or even-parity gates, parity and equivalence only binary.

use std::collections::HashMap;

use super::{Circuit, GateFunc, GateId};

#[derive(Copy, Clone, PartialEq, Eq, Hash)]
enum Node {
    Const(bool),
    Gate(GateId),
}

struct Builder<'a> {
    c: &'a mut Circuit,
    consts: [Option<GateId>; 2],
}

impl Builder<'_> {
    fn constant(&mut self, value: bool) -> GateId {
        let slot = usize::from(value);
        if let Some(g) = self.consts[slot] {
            return g;
        }
        let g = self.c.fresh_gate(GateFunc::constant(value), Vec::new());
        self.consts[slot] = Some(g);
        g
    }

    fn gate_of(&mut self, n: Node) -> GateId {
        match n {
            Node::Const(v) => self.constant(v),
            Node::Gate(g) => g,
        }
    }

    /// Left-leaning chain of binary XOR gates over `ch` (at least two).
    fn xor_chain(&mut self, ch: &[GateId]) -> GateId {
        let mut acc = ch[0];
        for &x in &ch[1..] {
            acc = self.c.fresh_gate(GateFunc::Xor, vec![acc, x]);
        }
        acc
    }

    fn card(
        &mut self,
        ch: &[GateId],
        i: usize,
        low: i64,
        high: i64,
        memo: &mut HashMap<(usize, i64, i64), Node>,
    ) -> Node {
        let rem = (ch.len() - i) as i64;
        if low <= 0 && high >= rem {
            return Node::Const(true);
        }
        if low > rem || high < 0 || low > high {
            return Node::Const(false);
        }
        let key = (i, low.max(0), high.min(rem));
        if let Some(&n) = memo.get(&key) {
            return n;
        }
        let on = self.card(ch, i + 1, low - 1, high - 1, memo);
        let off = self.card(ch, i + 1, low, high, memo);
        let s = ch[i];
        let n = match (on, off) {
            _ if on == off => on,
            (Node::Const(true), Node::Const(false)) => Node::Gate(s),
            (Node::Const(false), Node::Const(true)) => Node::Gate(self.c.fresh_gate(GateFunc::Not, vec![s])),
            _ => {
                let t = self.gate_of(on);
                let e = self.gate_of(off);
                Node::Gate(self.c.fresh_gate(GateFunc::Ite, vec![s, t, e]))
            }
        };
        memo.insert(key, n);
        n
    }
}

/// N-ary XOR becomes a left chain of binary XOR, EVEN the negation of such a
/// chain, N-ary EQUIV a conjunction of binary EQUIV against the first child,
/// and CARD an if-then-else decision diagram over its children. Every
/// original gate keeps its id and value; new gates receive fresh ids. Panics
/// on an invalid circuit.
pub fn normalize_circuit(c: &Circuit) -> Circuit {
    let order = c.validate().expect("valid circuit");
    let mut out = c.clone();
    let mut b = Builder {
        c: &mut out,
        consts: [None, None],
    };
    for g in order {
        let func = b.c.func(g);
        let ch = b.c.children(g).to_vec();
        match func {
            GateFunc::Xor if ch.len() == 1 => b.c.redefine(g, GateFunc::And, ch),
            GateFunc::Xor if ch.len() > 2 => {
                let head = b.xor_chain(&ch[..ch.len() - 1]);
                b.c.redefine(g, GateFunc::Xor, vec![head, ch[ch.len() - 1]]);
            }
            GateFunc::Even if ch.len() == 1 => b.c.redefine(g, GateFunc::Not, ch),
            GateFunc::Even => {
                let x = b.xor_chain(&ch);
                b.c.redefine(g, GateFunc::Not, vec![x]);
            }
            GateFunc::Equiv if ch.len() == 1 => b.c.redefine(g, GateFunc::ConstTrue, Vec::new()),
            GateFunc::Equiv if ch.len() > 2 => {
                let parts = ch[1..]
                    .iter()
                    .map(|&x| b.c.fresh_gate(GateFunc::Equiv, vec![ch[0], x]))
                    .collect();
                b.c.redefine(g, GateFunc::And, parts);
            }
            GateFunc::Card { low, high } => {
                let mut memo = HashMap::new();
                match b.card(&ch, 0, i64::from(low), i64::from(high), &mut memo) {
                    Node::Const(v) => b.c.redefine(g, GateFunc::constant(v), Vec::new()),
                    Node::Gate(x) => b.c.redefine(g, GateFunc::And, vec![x]),
                }
            }
            _ => {}
        }
    }
    out
}

/// True if every gate is accepted by the clause tables of the encoders.
pub fn is_normalized(c: &Circuit) -> bool {
    c.gates().all(|g| match g.func {
        GateFunc::Card { .. } | GateFunc::Even => false,
        GateFunc::Xor | GateFunc::Equiv => g.children.len() == 2,
        _ => true,
    })
}
