// SPDX-License-Identifier: Apache-2.0

//! Boolean circuits: a DAG of typed gates plus output constraints.

mod normalize;
mod polarity;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::oracle::{OracleBound, OracleError};

pub use normalize::{is_normalized, normalize_circuit};
pub use polarity::{child_polarity, polarity, Polarity, PolarityMap};
pub use reduce::{coi_reduce, mir_reduce, nsi_reduce, simplify_fixpoint, simplify_with, Passes};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateId(pub u32);

impl fmt::Debug for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateFunc {
    ConstTrue,
    ConstFalse,
    Input,
    Not,
    And,
    Or,
    /// Odd parity.
    Xor,
    /// Even parity.
    Even,
    /// All children equal.
    Equiv,
    Imply,
    Ite,
    /// Number of true children lies in `low..=high`.
    Card { low: u32, high: u32 },
}

impl GateFunc {
    pub fn arity_ok(self, n: usize) -> bool {
        match self {
            GateFunc::ConstTrue | GateFunc::ConstFalse | GateFunc::Input => n == 0,
            GateFunc::Not => n == 1,
            GateFunc::Imply => n == 2,
            GateFunc::Ite => n == 3,
            GateFunc::And | GateFunc::Or | GateFunc::Xor | GateFunc::Even | GateFunc::Equiv => n >= 1,
            GateFunc::Card { low, high } => n >= 1 && low <= high,
        }
    }

    /// Value of the gate given its children's values. Inputs evaluate to
    /// false here; their values come from the input assignment.
    pub fn eval(self, v: &[bool]) -> bool {
        let ones = v.iter().filter(|&&b| b).count();
        match self {
            GateFunc::ConstTrue => true,
            GateFunc::ConstFalse | GateFunc::Input => false,
            GateFunc::Not => !v[0],
            GateFunc::And => v.iter().all(|&b| b),
            GateFunc::Or => v.iter().any(|&b| b),
            GateFunc::Xor => ones % 2 == 1,
            GateFunc::Even => ones % 2 == 0,
            GateFunc::Equiv => v.iter().all(|&b| b == v[0]),
            GateFunc::Imply => !v[0] || v[1],
            GateFunc::Ite => {
                if v[0] {
                    v[1]
                } else {
                    v[2]
                }
            }
            GateFunc::Card { low, high } => (low as usize..=high as usize).contains(&ones),
        }
    }

    pub fn is_const(self) -> bool {
        matches!(self, GateFunc::ConstTrue | GateFunc::ConstFalse)
    }

    pub fn constant(value: bool) -> GateFunc {
        if value {
            GateFunc::ConstTrue
        } else {
            GateFunc::ConstFalse
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: GateId,
    pub name: String,
    pub func: GateFunc,
    pub children: Vec<GateId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate `{0}` lies on a cycle")]
    Cycle(String),
    #[error("gate `{0}` has an invalid number of children")]
    Arity(String),
    #[error("gate `{0}` is defined more than once")]
    DuplicateDefinition(String),
    #[error("gate `{0}` refers to a missing child")]
    MissingChild(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    gates: BTreeMap<GateId, Gate>,
    by_name: BTreeMap<String, GateId>,
    next: u32,
    constraints: Vec<(GateId, bool)>,
}

impl Circuit {
    pub fn new() -> Circuit {
        Circuit::default()
    }

    /// The gate named `name`, created as an input if it does not exist.
    pub fn input(&mut self, name: &str) -> GateId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        self.insert(name.to_string(), GateFunc::Input, Vec::new())
    }

    pub fn add_gate(
        &mut self,
        name: &str,
        func: GateFunc,
        children: Vec<GateId>,
    ) -> Result<GateId, CircuitError> {
        if self.by_name.contains_key(name) {
            return Err(CircuitError::DuplicateDefinition(name.to_string()));
        }
        Ok(self.insert(name.to_string(), func, children))
    }

    /// Adds a gate under a generated name.
    pub fn fresh_gate(&mut self, func: GateFunc, children: Vec<GateId>) -> GateId {
        let mut k = self.next;
        let name = loop {
            let candidate = format!("_n{k}");
            if !self.by_name.contains_key(&candidate) {
                break candidate;
            }
            k += 1;
        };
        self.insert(name, func, children)
    }

    fn insert(&mut self, name: String, func: GateFunc, children: Vec<GateId>) -> GateId {
        let id = GateId(self.next);
        self.next += 1;
        self.by_name.insert(name.clone(), id);
        self.gates.insert(
            id,
            Gate {
                id,
                name,
                func,
                children,
            },
        );
        id
    }

    /// Replaces the function and children of an existing gate.
    pub fn redefine(&mut self, id: GateId, func: GateFunc, children: Vec<GateId>) {
        let g = self.gates.get_mut(&id).expect("gate exists");
        g.func = func;
        g.children = children;
    }

    pub fn constrain(&mut self, g: GateId, value: bool) {
        self.constraints.push((g, value));
    }

    pub fn constraints(&self) -> &[(GateId, bool)] {
        &self.constraints
    }

    pub fn gate(&self, id: GateId) -> Option<&Gate> {
        self.gates.get(&id)
    }

    pub fn func(&self, id: GateId) -> GateFunc {
        self.gates[&id].func
    }

    pub fn children(&self, id: GateId) -> &[GateId] {
        &self.gates[&id].children
    }

    pub fn name(&self, id: GateId) -> &str {
        &self.gates[&id].name
    }

    pub fn lookup(&self, name: &str) -> Option<GateId> {
        self.by_name.get(name).copied()
    }

    /// Gates in id order.
    pub fn gates(&self) -> impl Iterator<Item = &Gate> + '_ {
        self.gates.values()
    }

    pub fn ids(&self) -> Vec<GateId> {
        self.gates.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Parent gates of every gate, one entry per child edge.
    pub fn parents(&self) -> BTreeMap<GateId, Vec<GateId>> {
        let mut p: BTreeMap<GateId, Vec<GateId>> = self.gates.keys().map(|&id| (id, Vec::new())).collect();
        for g in self.gates.values() {
            for &c in &g.children {
                p.entry(c).or_default().push(g.id);
            }
        }
        p
    }

    pub fn fanout(&self, id: GateId) -> usize {
        self.gates
            .values()
            .map(|g| g.children.iter().filter(|&&c| c == id).count())
            .sum()
    }

    pub fn inputs(&self) -> Vec<GateId> {
        self.gates
            .values()
            .filter(|g| g.func == GateFunc::Input)
            .map(|g| g.id)
            .collect()
    }

    /// Gates without parents.
    pub fn outputs(&self) -> Vec<GateId> {
        self.parents()
            .into_iter()
            .filter(|(_, p)| p.is_empty())
            .map(|(id, _)| id)
            .collect()
    }

    pub fn is_constrained(&self, id: GateId) -> bool {
        self.constraints.iter().any(|&(g, _)| g == id)
    }

    /// Removes the given gates and their names. Children and constraints
    /// referring to them must already be gone.
    pub(crate) fn remove_gates(&mut self, ids: &BTreeSet<GateId>) {
        for id in ids {
            if let Some(g) = self.gates.remove(id) {
                self.by_name.remove(&g.name);
            }
        }
    }

    /// Checks arities, then acyclicity; returns a topological order
    /// (children before parents, depth-first from gates in id order).
    pub fn validate(&self) -> Result<Vec<GateId>, CircuitError> {
        for g in self.gates.values() {
            if !g.func.arity_ok(g.children.len()) {
                return Err(CircuitError::Arity(g.name.clone()));
            }
            if g.children.iter().any(|c| !self.gates.contains_key(c)) {
                return Err(CircuitError::MissingChild(g.name.clone()));
            }
        }
        for &(g, _) in &self.constraints {
            if !self.gates.contains_key(&g) {
                return Err(CircuitError::MissingChild(format!("{g:?}")));
            }
        }
        // 0 unvisited, 1 on the DFS stack, 2 done
        let mut state: BTreeMap<GateId, u8> = BTreeMap::new();
        let mut order = Vec::with_capacity(self.gates.len());
        for &root in self.gates.keys() {
            if state.contains_key(&root) {
                continue;
            }
            let mut stack: Vec<(GateId, usize)> = vec![(root, 0)];
            state.insert(root, 1);
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                let children = &self.gates[&v].children;
                if let Some(&c) = children.get(*pos) {
                    *pos += 1;
                    match state.get(&c) {
                        None => {
                            state.insert(c, 1);
                            stack.push((c, 0));
                        }
                        Some(1) => return Err(CircuitError::Cycle(self.gates[&c].name.clone())),
                        Some(_) => {}
                    }
                } else {
                    state.insert(v, 2);
                    order.push(v);
                    stack.pop();
                }
            }
        }
        Ok(order)
    }

    /// Values of all gates. Inputs missing from `inputs` are false. Panics
    /// on an invalid circuit.
    pub fn eval(&self, inputs: &BTreeMap<GateId, bool>) -> BTreeMap<GateId, bool> {
        let order = self.validate().expect("valid circuit");
        self.eval_in_order(&order, inputs)
    }

    fn eval_in_order(&self, order: &[GateId], inputs: &BTreeMap<GateId, bool>) -> BTreeMap<GateId, bool> {
        let mut val = BTreeMap::new();
        let mut buf = Vec::new();
        for &id in order {
            let g = &self.gates[&id];
            let v = if g.func == GateFunc::Input {
                inputs.get(&id).copied().unwrap_or(false)
            } else {
                buf.clear();
                buf.extend(g.children.iter().map(|c| val[c]));
                g.func.eval(&buf)
            };
            val.insert(id, v);
        }
        val
    }

    pub fn constraints_hold(&self, values: &BTreeMap<GateId, bool>) -> bool {
        self.constraints.iter().all(|&(g, want)| values[&g] == want)
    }
}

/// Exhaustive search over the inputs, first input (by id) least significant.
/// Returns the first satisfying input assignment.
pub fn circuit_sat(
    c: &Circuit,
    bound: &OracleBound,
) -> Result<Option<BTreeMap<GateId, bool>>, OracleError> {
    let inputs = c.inputs();
    let n = inputs.len() as u32;
    if n > bound.max_vars || n > 62 {
        return Err(OracleError::BoundExceeded {
            vars: n,
            bound: bound.max_vars.min(62),
        });
    }
    let order = c.validate().expect("valid circuit");
    for bits in 0..1u64 << n {
        let a: BTreeMap<GateId, bool> = inputs
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, bits >> i & 1 == 1))
            .collect();
        if c.constraints_hold(&c.eval_in_order(&order, &a)) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
