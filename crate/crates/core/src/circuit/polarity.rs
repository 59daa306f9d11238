// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use super::{Circuit, GateFunc, GateId};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polarity {
    pub pos: bool,
    pub neg: bool,
}

impl Polarity {
    pub const NONE: Polarity = Polarity { pos: false, neg: false };
    pub const POS: Polarity = Polarity { pos: true, neg: false };
    pub const NEG: Polarity = Polarity { pos: false, neg: true };
    pub const BOTH: Polarity = Polarity { pos: true, neg: true };

    pub fn of(value: bool) -> Polarity {
        if value {
            Polarity::POS
        } else {
            Polarity::NEG
        }
    }

    pub fn flip(self) -> Polarity {
        Polarity {
            pos: self.neg,
            neg: self.pos,
        }
    }

    pub fn union(self, other: Polarity) -> Polarity {
        Polarity {
            pos: self.pos || other.pos,
            neg: self.neg || other.neg,
        }
    }

    pub fn is_empty(self) -> bool {
        !self.pos && !self.neg
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolarityMap {
    map: BTreeMap<GateId, Polarity>,
}

impl PolarityMap {
    pub fn get(&self, id: GateId) -> Polarity {
        self.map.get(&id).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GateId, Polarity)> + '_ {
        self.map.iter().map(|(&g, &p)| (g, p))
    }

    fn add(&mut self, id: GateId, p: Polarity) {
        let e = self.map.entry(id).or_default();
        *e = e.union(p);
    }
}

/// Polarity each child receives from a gate with polarity `p`, by position.
pub fn child_polarity(func: GateFunc, position: usize, p: Polarity) -> Polarity {
    if p.is_empty() {
        return Polarity::NONE;
    }
    match func {
        GateFunc::Not => p.flip(),
        GateFunc::And | GateFunc::Or => p,
        GateFunc::Imply => {
            if position == 0 {
                p.flip()
            } else {
                p
            }
        }
        GateFunc::Ite => {
            if position == 0 {
                Polarity::BOTH
            } else {
                p
            }
        }
        GateFunc::Xor | GateFunc::Even | GateFunc::Equiv | GateFunc::Card { .. } => Polarity::BOTH,
        GateFunc::ConstTrue | GateFunc::ConstFalse | GateFunc::Input => Polarity::NONE,
    }
}

/// Least polarity map: constrained gates are seeded with the required value
/// and polarities flow from parents to children. Panics on an invalid
/// circuit.
pub fn polarity(c: &Circuit) -> PolarityMap {
    let order = c.validate().expect("valid circuit");
    let mut pm = PolarityMap::default();
    for &(g, value) in c.constraints() {
        pm.add(g, Polarity::of(value));
    }
    for &id in order.iter().rev() {
        let p = pm.get(id);
        if p.is_empty() {
            continue;
        }
        let func = c.func(id);
        for (i, &child) in c.children(id).iter().enumerate() {
            pm.add(child, child_polarity(func, i, p));
        }
    }
    pm
}
