// SPDX-License-Identifier: Apache-2.0

//! Versioned JSON statistics for a preprocessing run.

use serde::{Deserialize, Serialize};

use crate::elim::{ElimReport, TechniqueId};

pub const STATS_SCHEMA: &str = "cnfprep-stats";
pub const STATS_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TechniqueRecord {
    pub name: String,
    pub clauses_removed: u64,
    pub clauses_added: u64,
    pub literals_added: u64,
    pub rounds: u64,
    /// Wall time in microseconds.
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub schema: String,
    pub version: u32,
    pub vars: u32,
    pub clauses_before: usize,
    pub clauses_after: usize,
    pub clauses_removed: u64,
    pub clauses_added: u64,
    pub unsat: bool,
    /// Every technique, in the fixed technique order; techniques that did
    /// not run have zero counters.
    pub techniques: Vec<TechniqueRecord>,
}

impl StatsDocument {
    pub fn from_report(report: &ElimReport, unsat: bool) -> StatsDocument {
        let techniques = TechniqueId::ALL
            .iter()
            .map(|&t| {
                let s = report.stats(t);
                TechniqueRecord {
                    name: t.name().to_string(),
                    clauses_removed: s.clauses_removed,
                    clauses_added: s.clauses_added,
                    literals_added: s.literals_added,
                    rounds: s.rounds,
                    elapsed_us: u64::try_from(s.elapsed.as_micros()).unwrap_or(u64::MAX),
                }
            })
            .collect();
        StatsDocument {
            schema: STATS_SCHEMA.to_string(),
            version: STATS_VERSION,
            vars: report.vars,
            clauses_before: report.clauses_before,
            clauses_after: report.clauses_after,
            clauses_removed: report.total_removed(),
            clauses_added: report.total_added(),
            unsat,
            techniques,
        }
    }

    pub fn technique(&self, name: &str) -> Option<&TechniqueRecord> {
        self.techniques.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("stats serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<StatsDocument> {
        serde_json::from_str(text)
    }
}
