// SPDX-License-Identifier: Apache-2.0

//! Tseitin and Plaisted-Greenbaum translations of normalized circuits.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{polarity, Circuit, CircuitError, Gate, GateFunc, GateId, Polarity};
use crate::formula::{normalize_clause, Assignment, Clause, CnfFormula, Literal};

/// Gate-to-variable numbering: inputs first in id order, then the remaining
/// gates in topological order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    to_var: BTreeMap<GateId, u32>,
    to_gate: Vec<GateId>,
    /// Inputs fixed by circuit simplification, for model reporting.
    pub fixed: BTreeMap<GateId, bool>,
}

impl VarMap {
    pub fn build(c: &Circuit) -> Result<VarMap, CircuitError> {
        let order = c.validate()?;
        let inputs = c.inputs();
        let mut vm = VarMap::default();
        for g in inputs.iter().copied().chain(order.into_iter().filter(|&g| c.func(g) != GateFunc::Input)) {
            vm.to_gate.push(g);
            vm.to_var.insert(g, vm.to_gate.len() as u32);
        }
        Ok(vm)
    }

    pub fn var(&self, g: GateId) -> Option<u32> {
        self.to_var.get(&g).copied()
    }

    pub fn gate(&self, var: u32) -> Option<GateId> {
        var.checked_sub(1).and_then(|i| self.to_gate.get(i as usize)).copied()
    }

    pub fn num_vars(&self) -> u32 {
        self.to_gate.len() as u32
    }

    /// `(gate, variable)` pairs in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (GateId, u32)> + '_ {
        self.to_gate.iter().enumerate().map(|(i, &g)| (g, i as u32 + 1))
    }

    fn lit(&self, g: GateId, positive: bool) -> Result<Literal, EncodeError> {
        self.var(g)
            .map(|v| Literal::new(v, positive))
            .ok_or(EncodeError::Unmapped(g))
    }

    /// Values of the circuit's inputs under a CNF model.
    pub fn input_values(&self, c: &Circuit, model: &Assignment) -> BTreeMap<GateId, bool> {
        c.inputs()
            .into_iter()
            .map(|g| (g, self.var(g).and_then(|v| model.get(v)).unwrap_or(false)))
            .collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// Clauses containing `¬g`: g true implies the definition.
    Pos,
    /// Clauses containing `g`: the definition implies g.
    Neg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Encoding {
    Tseitin,
    PlaistedGreenbaum,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("gate `{0}` must be normalized before encoding")]
    UnnormalizedGate(String),
    #[error("gate {0:?} has no variable")]
    Unmapped(GateId),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Definition clauses of one side of a gate. Tautological clauses, which
/// arise from repeated children, are omitted.
pub fn gate_clauses(g: &Gate, vm: &VarMap, side: Side) -> Result<Vec<Clause>, EncodeError> {
    let out = vm.lit(g.id, true)?;
    let ch = g
        .children
        .iter()
        .map(|&c| vm.lit(c, true))
        .collect::<Result<Vec<Literal>, _>>()?;
    let pos = side == Side::Pos;
    // every clause carries ¬g on the positive side, g on the negative side
    let head = if pos { !out } else { out };
    let raw: Vec<Vec<Literal>> = match (g.func, ch.as_slice()) {
        (GateFunc::Input, _) => vec![],
        (GateFunc::ConstTrue, _) => if pos { vec![] } else { vec![vec![]] },
        (GateFunc::ConstFalse, _) => if pos { vec![vec![]] } else { vec![] },
        (GateFunc::Not, &[a]) => vec![vec![if pos { !a } else { a }]],
        (GateFunc::And, _) if pos => ch.iter().map(|&c| vec![c]).collect(),
        (GateFunc::And, _) => vec![ch.iter().map(|&c| !c).collect()],
        (GateFunc::Or, _) if pos => vec![ch.clone()],
        (GateFunc::Or, _) => ch.iter().map(|&c| vec![!c]).collect(),
        (GateFunc::Imply, &[a, b]) if pos => vec![vec![!a, b]],
        (GateFunc::Imply, &[a, b]) => vec![vec![a], vec![!b]],
        (GateFunc::Xor, &[a, b]) if pos => vec![vec![a, b], vec![!a, !b]],
        (GateFunc::Xor, &[a, b]) => vec![vec![!a, b], vec![a, !b]],
        (GateFunc::Equiv, &[a, b]) if pos => vec![vec![!a, b], vec![a, !b]],
        (GateFunc::Equiv, &[a, b]) => vec![vec![a, b], vec![!a, !b]],
        (GateFunc::Ite, &[s, t, e]) if pos => vec![vec![!s, t], vec![s, e]],
        (GateFunc::Ite, &[s, t, e]) => vec![vec![!s, !t], vec![s, !e]],
        _ => return Err(EncodeError::UnnormalizedGate(g.name.clone())),
    };
    Ok(raw
        .into_iter()
        .filter_map(|mut lits| {
            lits.push(head);
            let (c, taut) = normalize_clause(&lits);
            (!taut).then_some(c)
        })
        .collect())
}

/// Encodes `c` over the numbering `vm`, which must cover every gate of `c`.
/// The formula has exactly `vm.num_vars()` variables. Gates are visited in
/// variable order, each contributing its positive then its negative side;
/// constraint units come last.
pub fn encode_with_map(c: &Circuit, vm: &VarMap, encoding: Encoding) -> Result<CnfFormula, EncodeError> {
    c.validate()?;
    let pol = match encoding {
        Encoding::Tseitin => None,
        Encoding::PlaistedGreenbaum => Some(polarity(c)),
    };
    let mut f = CnfFormula::new(vm.num_vars());
    for (g, _) in vm.iter() {
        let Some(gate) = c.gate(g) else { continue };
        let p = pol.as_ref().map_or(Polarity::BOTH, |pm| pm.get(g));
        for (side, wanted) in [(Side::Pos, p.pos), (Side::Neg, p.neg)] {
            if wanted {
                for clause in gate_clauses(gate, vm, side)? {
                    f.add_clause(clause);
                }
            }
        }
    }
    for gate in c.gates() {
        if vm.var(gate.id).is_none() {
            return Err(EncodeError::Unmapped(gate.id));
        }
    }
    for &(g, value) in c.constraints() {
        f.add_clause(Clause::new(&[vm.lit(g, value)?]));
    }
    Ok(f)
}

pub fn tseitin(c: &Circuit) -> Result<(CnfFormula, VarMap), EncodeError> {
    let vm = VarMap::build(c)?;
    Ok((encode_with_map(c, &vm, Encoding::Tseitin)?, vm))
}

pub fn plaisted_greenbaum(c: &Circuit) -> Result<(CnfFormula, VarMap), EncodeError> {
    let vm = VarMap::build(c)?;
    Ok((encode_with_map(c, &vm, Encoding::PlaistedGreenbaum)?, vm))
}
