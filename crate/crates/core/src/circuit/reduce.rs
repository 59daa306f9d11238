// SPDX-License-Identifier: Apache-2.0

//! Cone-of-influence, non-shared-input and monotone-input reductions.

use std::collections::{BTreeMap, BTreeSet};

use super::polarity::{polarity, Polarity, PolarityMap};
use super::{Circuit, GateFunc, GateId};

/// Keeps exactly the gates reachable from constrained gates.
pub fn coi_reduce(c: &Circuit) -> Circuit {
    let mut keep = BTreeSet::new();
    let mut stack: Vec<GateId> = c.constraints().iter().map(|&(g, _)| g).collect();
    while let Some(g) = stack.pop() {
        if keep.insert(g) {
            stack.extend(c.children(g).iter().copied());
        }
    }
    let drop: BTreeSet<GateId> = c.ids().into_iter().filter(|g| !keep.contains(g)).collect();
    let mut out = c.clone();
    out.remove_gates(&drop);
    out
}

/// Whether a gate over `n` distinct free children takes both values.
fn surjective(func: GateFunc, n: usize) -> bool {
    match func {
        GateFunc::Not
        | GateFunc::And
        | GateFunc::Or
        | GateFunc::Xor
        | GateFunc::Even
        | GateFunc::Imply
        | GateFunc::Ite => true,
        // a single child is always equal to itself
        GateFunc::Equiv => n >= 2,
        GateFunc::Card { low, high } => {
            let inside = |k: usize| (low as usize..=high as usize).contains(&k);
            (0..=n).any(inside) && (0..=n).any(|k| !inside(k))
        }
        GateFunc::ConstTrue | GateFunc::ConstFalse | GateFunc::Input => false,
    }
}

fn nsi_candidate(c: &Circuit, id: GateId, fanout: &BTreeMap<GateId, usize>) -> bool {
    let func = c.func(id);
    let ch = c.children(id);
    let distinct: BTreeSet<GateId> = ch.iter().copied().collect();
    distinct.len() == ch.len()
        && ch.iter().all(|&x| {
            c.func(x) == GateFunc::Input && fanout[&x] == 1 && !c.is_constrained(x)
        })
        && surjective(func, ch.len())
}

/// Replaces gates whose children are private, unconstrained, pairwise
/// distinct inputs by a fresh input with the same id; the consumed inputs
/// are deleted.
pub fn nsi_reduce(c: &Circuit) -> Circuit {
    let mut out = c.clone();
    loop {
        let fanout: BTreeMap<GateId, usize> =
            out.parents().into_iter().map(|(g, p)| (g, p.len())).collect();
        let Some(g) = out.ids().into_iter().find(|&g| nsi_candidate(&out, g, &fanout)) else {
            return out;
        };
        let consumed: BTreeSet<GateId> = out.children(g).iter().copied().collect();
        out.redefine(g, GateFunc::Input, Vec::new());
        out.remove_gates(&consumed);
    }
}

/// The value of `g` if it is a constant whose value agrees with its
/// polarity: true with exactly `+`, false with exactly `-`.
fn agreeing(c: &Circuit, pm: &PolarityMap, g: GateId) -> Option<bool> {
    match (c.func(g), pm.get(g)) {
        (GateFunc::ConstTrue, Polarity::POS) => Some(true),
        (GateFunc::ConstFalse, Polarity::NEG) => Some(false),
        _ => None,
    }
}

/// New definition of `g` after folding its agreeing constant children, if
/// any rule applies.
fn fold(c: &Circuit, pm: &PolarityMap, g: GateId) -> Option<(GateFunc, Vec<GateId>)> {
    let ch = c.children(g);
    let k: Vec<Option<bool>> = ch.iter().map(|&x| agreeing(c, pm, x)).collect();
    if k.iter().all(Option::is_none) {
        return None;
    }
    let konst = |v: bool| Some((GateFunc::constant(v), Vec::new()));
    match c.func(g) {
        GateFunc::Not => konst(!k[0].expect("constant child")),
        GateFunc::And | GateFunc::Or => {
            let dominant = c.func(g) == GateFunc::Or;
            if k.contains(&Some(dominant)) {
                return konst(dominant);
            }
            let rest: Vec<GateId> = ch
                .iter()
                .zip(&k)
                .filter(|(_, v)| v.is_none())
                .map(|(&x, _)| x)
                .collect();
            if rest.is_empty() {
                konst(!dominant)
            } else {
                Some((c.func(g), rest))
            }
        }
        GateFunc::Imply => match (k[0], k[1]) {
            (Some(false), _) | (_, Some(true)) => konst(true),
            (Some(true), Some(false)) => konst(false),
            (Some(true), None) => Some((GateFunc::And, vec![ch[1]])),
            (None, Some(false)) => Some((GateFunc::Not, vec![ch[0]])),
            (None, None) => None,
        },
        GateFunc::Ite => {
            let (s, t, e) = (ch[0], ch[1], ch[2]);
            match (k[1], k[2]) {
                (Some(a), Some(b)) if a == b => konst(a),
                (Some(true), Some(false)) => Some((GateFunc::And, vec![s])),
                (Some(false), Some(true)) => Some((GateFunc::Not, vec![s])),
                (Some(true), None) => Some((GateFunc::Or, vec![s, e])),
                (None, Some(false)) => Some((GateFunc::And, vec![s, t])),
                (None, Some(true)) => Some((GateFunc::Imply, vec![s, t])),
                // ite(s, false, e) needs a fresh negation; left alone
                _ => None,
            }
        }
        _ => None,
    }
}

/// Fixes inputs of single polarity to the value that can only help the
/// constraints, then folds constants whose value agrees with their polarity,
/// to fixpoint. Returns the circuit and the fixed inputs.
pub fn mir_reduce(c: &Circuit) -> (Circuit, BTreeMap<GateId, bool>) {
    let mut out = c.clone();
    let mut fixed = BTreeMap::new();
    loop {
        let pm = polarity(&out);
        let mut changed = false;
        for g in out.inputs() {
            let value = match pm.get(g) {
                Polarity::POS => true,
                Polarity::NEG => false,
                _ => continue,
            };
            out.redefine(g, GateFunc::constant(value), Vec::new());
            fixed.insert(g, value);
            changed = true;
        }
        let order = out.validate().expect("valid circuit");
        for g in order {
            if let Some((func, children)) = fold(&out, &pm, g) {
                out.redefine(g, func, children);
                changed = true;
            }
        }
        if !changed {
            return (out, fixed);
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Passes {
    pub coi: bool,
    pub nsi: bool,
    pub mir: bool,
}

impl Passes {
    pub const ALL: Passes = Passes {
        coi: true,
        nsi: true,
        mir: true,
    };
}

/// Applies the selected passes cyclically until the circuit stops changing.
pub fn simplify_with(c: &Circuit, passes: Passes) -> (Circuit, BTreeMap<GateId, bool>) {
    let mut cur = c.clone();
    let mut fixed = BTreeMap::new();
    loop {
        let before = cur.clone();
        if passes.coi {
            cur = coi_reduce(&cur);
        }
        if passes.nsi {
            cur = nsi_reduce(&cur);
        }
        if passes.mir {
            let (next, f) = mir_reduce(&cur);
            cur = next;
            fixed.extend(f);
        }
        if cur == before {
            // inputs later removed by a reduction are still reported
            return (cur, fixed);
        }
    }
}

pub fn simplify_fixpoint(c: &Circuit) -> Circuit {
    simplify_with(c, Passes::ALL).0
}
