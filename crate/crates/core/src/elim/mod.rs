// SPDX-License-Identifier: Apache-2.0

//! Clause elimination procedures.
//!
//! Four elimination families (tautology, subsumption, blocked, covered) are
//! each parameterized by an [`ExtensionMode`]: the clause under test is first
//! extended by hidden or asymmetric literal addition against the rest of the
//! formula, and the family's criterion is applied to the extension.
//! Hidden and asymmetric tautology/subsumption removals delete clauses that
//! are implied by the remaining formula; blocked and covered removals push
//! witnesses onto a [`ReconstructionStack`](crate::reconstruct::ReconstructionStack).

mod extend;
mod pipeline;
mod procedures;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::formula::CnfFormula;

pub use extend::{extend_clause, extend_literals};
pub use pipeline::{apply_technique, run_pipeline, PipelineConfig, PipelineError, PipelineOutput};
pub use procedures::{
    blocking_literal, covered_literal_additions, eliminate_blocked, eliminate_blocked_in_order,
    eliminate_covered, eliminate_in_order, eliminate_subsumed, eliminate_tautologies,
    is_removable, is_tautology, CoveredOutcome, ScanOrder,
};

/// How a clause is extended before an elimination criterion is checked.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionMode {
    None,
    /// Hidden literal addition via binary clauses.
    Hidden,
    /// Asymmetric literal addition via clauses of any length.
    Asymmetric,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TechniqueId {
    Te,
    Hte,
    Ate,
    Se,
    Hse,
    Ase,
    Bce,
    Hbce,
    Abce,
    Cce,
    Hcce,
    Acce,
    Pl,
    Fle,
    Els,
    Ve,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Tautology,
    Subsumption,
    Blocked,
    Covered,
}

impl TechniqueId {
    pub const ALL: [TechniqueId; 16] = [
        TechniqueId::Te,
        TechniqueId::Hte,
        TechniqueId::Ate,
        TechniqueId::Se,
        TechniqueId::Hse,
        TechniqueId::Ase,
        TechniqueId::Bce,
        TechniqueId::Hbce,
        TechniqueId::Abce,
        TechniqueId::Cce,
        TechniqueId::Hcce,
        TechniqueId::Acce,
        TechniqueId::Pl,
        TechniqueId::Fle,
        TechniqueId::Els,
        TechniqueId::Ve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TechniqueId::Te => "TE",
            TechniqueId::Hte => "HTE",
            TechniqueId::Ate => "ATE",
            TechniqueId::Se => "SE",
            TechniqueId::Hse => "HSE",
            TechniqueId::Ase => "ASE",
            TechniqueId::Bce => "BCE",
            TechniqueId::Hbce => "HBCE",
            TechniqueId::Abce => "ABCE",
            TechniqueId::Cce => "CCE",
            TechniqueId::Hcce => "HCCE",
            TechniqueId::Acce => "ACCE",
            TechniqueId::Pl => "PL",
            TechniqueId::Fle => "FLE",
            TechniqueId::Els => "ELS",
            TechniqueId::Ve => "VE",
        }
    }

    /// The elimination family and extension mode, for the twelve clause
    /// elimination techniques.
    pub fn family(self) -> Option<(Family, ExtensionMode)> {
        use ExtensionMode as M;
        use Family as F;
        Some(match self {
            TechniqueId::Te => (F::Tautology, M::None),
            TechniqueId::Hte => (F::Tautology, M::Hidden),
            TechniqueId::Ate => (F::Tautology, M::Asymmetric),
            TechniqueId::Se => (F::Subsumption, M::None),
            TechniqueId::Hse => (F::Subsumption, M::Hidden),
            TechniqueId::Ase => (F::Subsumption, M::Asymmetric),
            TechniqueId::Bce => (F::Blocked, M::None),
            TechniqueId::Hbce => (F::Blocked, M::Hidden),
            TechniqueId::Abce => (F::Blocked, M::Asymmetric),
            TechniqueId::Cce => (F::Covered, M::None),
            TechniqueId::Hcce => (F::Covered, M::Hidden),
            TechniqueId::Acce => (F::Covered, M::Asymmetric),
            TechniqueId::Pl | TechniqueId::Fle | TechniqueId::Els | TechniqueId::Ve => {
                return None
            }
        })
    }

    pub fn of(family: Family, mode: ExtensionMode) -> TechniqueId {
        *TechniqueId::ALL
            .iter()
            .find(|t| t.family() == Some((family, mode)))
            .expect("every family/mode pair has a technique")
    }
}

impl fmt::Display for TechniqueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown technique `{0}`")]
pub struct UnknownTechnique(pub String);

impl FromStr for TechniqueId {
    type Err = UnknownTechnique;

    fn from_str(s: &str) -> Result<TechniqueId, UnknownTechnique> {
        TechniqueId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownTechnique(s.to_string()))
    }
}

/// Parses a comma-separated technique list such as `"te,bce,ve"`.
pub fn parse_technique_list(s: &str) -> Result<Vec<TechniqueId>, UnknownTechnique> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TechniqueStats {
    pub clauses_removed: u64,
    pub clauses_added: u64,
    /// Literals added by clause extension while testing clauses.
    pub literals_added: u64,
    pub rounds: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElimReport {
    pub vars: u32,
    pub clauses_before: usize,
    pub clauses_after: usize,
    pub techniques: BTreeMap<TechniqueId, TechniqueStats>,
}

impl ElimReport {
    pub fn stats(&self, t: TechniqueId) -> TechniqueStats {
        self.techniques.get(&t).cloned().unwrap_or_default()
    }

    pub fn entry(&mut self, t: TechniqueId) -> &mut TechniqueStats {
        self.techniques.entry(t).or_default()
    }

    pub fn total_removed(&self) -> u64 {
        self.techniques.values().map(|s| s.clauses_removed).sum()
    }

    pub fn total_added(&self) -> u64 {
        self.techniques.values().map(|s| s.clauses_added).sum()
    }

    /// Runs `body` on `f`, charging its clause additions, removals, rounds
    /// and wall time to technique `t`.
    pub(crate) fn record<T>(
        &mut self,
        t: TechniqueId,
        f: &mut CnfFormula,
        body: impl FnOnce(&mut CnfFormula) -> (T, u64),
    ) -> T {
        let start = Instant::now();
        let (added0, removed0) = f.mutation_counts();
        let (out, rounds) = body(f);
        let (added1, removed1) = f.mutation_counts();
        let s = self.entry(t);
        s.clauses_added += added1 - added0;
        s.clauses_removed += removed1 - removed0;
        s.rounds += rounds;
        s.elapsed += start.elapsed();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for t in TechniqueId::ALL {
            assert_eq!(t.name().to_lowercase().parse::<TechniqueId>().unwrap(), t);
        }
        assert!("xyz".parse::<TechniqueId>().is_err());
        assert_eq!(
            parse_technique_list("te,bce, ve").unwrap(),
            vec![TechniqueId::Te, TechniqueId::Bce, TechniqueId::Ve]
        );
        assert!(parse_technique_list("te,bogus").is_err());
    }

    #[test]
    fn family_mapping() {
        assert_eq!(
            TechniqueId::of(Family::Covered, ExtensionMode::Asymmetric),
            TechniqueId::Acce
        );
        assert_eq!(TechniqueId::Ve.family(), None);
    }
}
