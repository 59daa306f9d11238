// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cnfprep::bench::{
    ephp_extension_vars, gen_ephp, gen_php, gen_xor_unsat, php_clause_count,
};
use cnfprep::circuit::{circuit_sat, coi_reduce, normalize_circuit, simplify_fixpoint, Circuit, GateId};
use cnfprep::elim::{
    eliminate_blocked, eliminate_blocked_in_order, extend_clause, is_removable, run_pipeline, ElimReport,
    ExtensionMode, Family, PipelineConfig, PipelineOutput, ScanOrder, TechniqueId,
};
use cnfprep::encode::{encode_with_map, gate_clauses, Encoding, Side, VarMap};
use cnfprep::formula::{Assignment, Clause, CnfFormula};
use cnfprep::io::{parse_circuit, parse_dimacs, run_external_solver, write_circuit, write_dimacs, SolverOutcome};
use cnfprep::oracle::{brute_force_sat, search_sat, OracleBound};
use cnfprep::reconstruct::ReconstructionStack;
use rand::seq::SliceRandom;

use common::{clause_set, random_circuit, random_cnf, rng};

const CNF_CORPUS: usize = 10_000;
const CIRCUIT_CORPUS: usize = 1_000;
const CONFLUENCE_FORMULAS: usize = 1_000;
const CONFLUENCE_ORDERS: usize = 5;
const EQUISAT_LIMIT: Duration = Duration::from_secs(300);
const PHP4_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(name: &'static str, violations: usize, detail: String) -> Outcome {
        Outcome {
            name,
            pass: violations == 0,
            detail: format!("{violations} violations; {detail}"),
        }
    }
}

/// Reconstruction checks shared by every suite.
#[derive(Default)]
struct Repairs {
    checked: usize,
    failed: usize,
}

impl Repairs {
    fn check(&mut self, original: &CnfFormula, reduced: &CnfFormula, stack: &ReconstructionStack, model: &Assignment) {
        debug_assert!(model.satisfies(reduced));
        self.checked += 1;
        match stack.reconstruct_model(model, original.num_vars()) {
            Ok(m) if m.satisfies(original) => {}
            _ => self.failed += 1,
        }
    }
}

fn corpus() -> Vec<CnfFormula> {
    let mut r = rng(0xacce);
    (0..CNF_CORPUS).map(|_| random_cnf(&mut r, 8, 20)).collect()
}

fn circuits() -> Vec<Circuit> {
    let mut r = rng(0xc1c);
    (0..CIRCUIT_CORPUS).map(|_| random_circuit(&mut r)).collect()
}

fn single(f: &CnfFormula, t: TechniqueId) -> PipelineOutput {
    let config = PipelineConfig {
        techniques: vec![t],
        global_fixpoint: false,
        ve_growth_bound: 0,
    };
    run_pipeline(f.clone(), &config).expect("single technique")
}

fn equisatisfiability(corpus: &[CnfFormula], repairs: &mut Repairs) -> Outcome {
    let bound = OracleBound::default();
    let start = Instant::now();
    let mut violations = 0;
    let mut runs = 0;
    for f in corpus {
        let sat = brute_force_sat(f, &bound).expect("within bound").is_some();
        for t in TechniqueId::ALL {
            runs += 1;
            let out = single(f, t);
            let model = brute_force_sat(&out.formula, &bound).expect("within bound");
            if model.is_some() != sat {
                violations += 1;
            }
            if let Some(m) = model {
                repairs.check(f, &out.formula, &out.stack, &m);
            }
        }
    }
    let elapsed = start.elapsed();
    let mut o = Outcome::new(
        "equisatisfiability",
        violations,
        format!(
            "{runs} runs = {} formulas x {} techniques; {:.1}s (limit {}s)",
            corpus.len(),
            TechniqueId::ALL.len(),
            elapsed.as_secs_f64(),
            EQUISAT_LIMIT.as_secs()
        ),
    );
    if elapsed > EQUISAT_LIMIT {
        o.pass = false;
    }
    o
}

fn hierarchy(corpus: &[CnfFormula]) -> Outcome {
    use ExtensionMode::{Asymmetric, Hidden};
    let mut violations = 0;
    let mut clauses = 0;
    for f in corpus {
        for id in f.ids() {
            clauses += 1;
            let hla = extend_clause(f, id, Hidden);
            let ala = extend_clause(f, id, Asymmetric);
            if !hla.is_subset_of(&ala) {
                violations += 1;
            }
            for family in [Family::Tautology, Family::Subsumption] {
                let p = is_removable(f, id, family, ExtensionMode::None);
                let h = is_removable(f, id, family, Hidden);
                let a = is_removable(f, id, family, Asymmetric);
                if (p && !h) || (h && !a) {
                    violations += 1;
                }
            }
            if is_removable(f, id, Family::Blocked, ExtensionMode::None) {
                if !is_removable(f, id, Family::Blocked, Hidden) {
                    violations += 1;
                }
                if !is_removable(f, id, Family::Covered, ExtensionMode::None) {
                    violations += 1;
                }
            }
        }
    }
    Outcome::new(
        "hierarchy",
        violations,
        format!("{clauses} clauses in {} formulas", corpus.len()),
    )
}

fn bce_confluence(corpus: &[CnfFormula], repairs: &mut Repairs) -> Outcome {
    let mut r = rng(0xbce);
    let mut violations = 0;
    for f in &corpus[..CONFLUENCE_FORMULAS] {
        let mut reference = f.clone();
        let mut stack = ReconstructionStack::new();
        eliminate_blocked(&mut reference, ExtensionMode::None, &mut stack, &mut ElimReport::default());
        let expected = clause_set(&reference);
        for _ in 0..CONFLUENCE_ORDERS {
            let mut order = f.ids();
            order.shuffle(&mut r);
            let mut g = f.clone();
            let mut s = ReconstructionStack::new();
            eliminate_blocked_in_order(
                &mut g,
                ExtensionMode::None,
                &mut s,
                &mut ElimReport::default(),
                &ScanOrder::Given(order),
            );
            if clause_set(&g) != expected {
                violations += 1;
            }
            if let Some(m) = search_sat(&g) {
                repairs.check(f, &g, &s, &m);
            }
        }
    }
    Outcome::new(
        "bce-confluence",
        violations,
        format!("{CONFLUENCE_FORMULAS} formulas x {CONFLUENCE_ORDERS} random scan orders"),
    )
}

fn tseitin_clauses_of(n: &Circuit, vm: &VarMap, g: GateId) -> Vec<Clause> {
    let gate = n.gate(g).expect("gate");
    let mut out = gate_clauses(gate, vm, Side::Pos).expect("normalized");
    out.extend(gate_clauses(gate, vm, Side::Neg).expect("normalized"));
    out
}

fn containment(circuits: &[Circuit], repairs: &mut Repairs) -> Outcome {
    let mut violations = 0;
    let mut coi_gates = 0;
    let mut coi_violations = 0;
    for c in circuits {
        let n = normalize_circuit(c);
        let vm = VarMap::build(&n).expect("valid");
        let tst = encode_with_map(&n, &vm, Encoding::Tseitin).expect("encodable");
        let mut t = tst.clone();
        let mut stack = ReconstructionStack::new();
        eliminate_blocked(&mut t, ExtensionMode::None, &mut stack, &mut ElimReport::default());
        let pg = encode_with_map(&simplify_fixpoint(&n), &vm, Encoding::PlaistedGreenbaum).expect("encodable");
        let (bt, pgs) = (clause_set(&t), clause_set(&pg));
        if !bt.is_subset(&pgs) {
            violations += 1;
        }
        let kept: BTreeSet<GateId> = coi_reduce(&n).ids().into_iter().collect();
        for g in n.ids().into_iter().filter(|g| !kept.contains(g)) {
            coi_gates += 1;
            if tseitin_clauses_of(&n, &vm, g).iter().any(|cl| bt.contains(cl)) {
                coi_violations += 1;
            }
        }
        if let Some(m) = search_sat(&t) {
            repairs.check(&tst, &t, &stack, &m);
        }
    }
    Outcome::new(
        "simulation-containment",
        violations + coi_violations,
        format!(
            "{} circuits, BCE(TST) within PG(simplified): {violations} failures; \
             {coi_gates} gates outside the cone, {coi_violations} with surviving TST clauses",
            circuits.len()
        ),
    )
}

fn encoding_correctness(circuits: &[Circuit]) -> Outcome {
    let bound = OracleBound::default();
    let mut sat_mismatch = 0;
    let mut pg_not_sub = 0;
    let mut eval_mismatch = 0;
    for c in circuits {
        let expected = circuit_sat(c, &bound).expect("within bound").is_some();
        let n = normalize_circuit(c);
        let vm = VarMap::build(&n).expect("valid");
        let tst = encode_with_map(&n, &vm, Encoding::Tseitin).expect("encodable");
        let pg = encode_with_map(&n, &vm, Encoding::PlaistedGreenbaum).expect("encodable");
        if search_sat(&tst).is_some() != expected || search_sat(&pg).is_some() != expected {
            sat_mismatch += 1;
        }
        if !clause_set(&pg).is_subset(&clause_set(&tst)) {
            pg_not_sub += 1;
        }
        let inputs = c.inputs();
        for bits in 0..1u32 << inputs.len() {
            let a: BTreeMap<GateId, bool> =
                inputs.iter().enumerate().map(|(i, &g)| (g, bits >> i & 1 == 1)).collect();
            let (vc, vn) = (c.eval(&a), n.eval(&a));
            if c.ids().iter().any(|g| vc[g] != vn[g]) {
                eval_mismatch += 1;
                break;
            }
        }
    }
    Outcome::new(
        "encoding-correctness",
        sat_mismatch + pg_not_sub + eval_mismatch,
        format!(
            "{} circuits; satisfiability disagreements {sat_mismatch}, PG not within TST {pg_not_sub}, \
             normalization eval mismatches {eval_mismatch}",
            circuits.len()
        ),
    )
}

fn benchmarks() -> Outcome {
    let bound = OracleBound::default();
    let mut violations = 0;
    let mut notes = Vec::new();
    for n in 1..=4u32 {
        let f = gen_php(n);
        if f.len() != php_clause_count(n) || f.num_vars() != n * (n + 1) {
            violations += 1;
        }
        let start = Instant::now();
        let unsat = brute_force_sat(&f, &bound).expect("within bound").is_none();
        let t = start.elapsed();
        if !unsat || (n == 4 && t > PHP4_LIMIT) {
            violations += 1;
        }
        if n == 4 {
            notes.push(format!("php(4) {} vars in {:.2}s", f.num_vars(), t.as_secs_f64()));
        }
    }
    let e = gen_ephp(2);
    if e.len() != php_clause_count(2) + 4 * ephp_extension_vars(2) as usize
        || e.num_vars() != 6 + ephp_extension_vars(2)
        || brute_force_sat(&e, &bound).expect("within bound").is_some()
    {
        violations += 1;
    }
    for n in 1..=15u32 {
        let f = gen_xor_unsat(n);
        let unsat = brute_force_sat(&f, &bound).expect("within bound").is_none();
        if f.len() != 2 * n as usize || unsat != (n % 2 == 1) {
            violations += 1;
        }
    }
    notes.push("php n=1..4, ephp(2), xor ring n=1..15".into());
    Outcome::new("benchmarks", violations, notes.join("; "))
}

fn stub(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, format!("#!/bin/sh\n{body}\n")).expect("write stub");
    fs::set_permissions(&p, fs::Permissions::from_mode(0o755)).expect("chmod stub");
    p
}

fn io_round_trips(corpus: &[CnfFormula], circuits: &[Circuit]) -> Outcome {
    let mut violations = 0;
    for f in &corpus[..1000] {
        let text = write_dimacs(f);
        match parse_dimacs(&text) {
            Ok(p) if write_dimacs(&p.formula) == text && p.formula.to_dimacs() == f.to_dimacs() => {}
            _ => violations += 1,
        }
    }
    for c in &circuits[..1000] {
        let text = write_circuit(c);
        match parse_circuit(&text) {
            Ok(back) if write_circuit(&back) == text => {}
            _ => violations += 1,
        }
    }
    let dir = tempfile::tempdir().expect("tempdir");
    let f = CnfFormula::from_dimacs(&[&[1, -2]]);
    let sat = stub(&dir, "sat", "echo 's SATISFIABLE'\necho 'v 1 -2 0'\nexit 10");
    let unsat = stub(&dir, "unsat", "echo 's UNSATISFIABLE'\nexit 20");
    let slow = stub(&dir, "slow", "sleep 10");
    let expected = [
        (sat, Duration::from_secs(10), SolverOutcome::Sat(Assignment::from_bools(&[true, false]))),
        (unsat, Duration::from_secs(10), SolverOutcome::Unsat),
        (slow, Duration::from_millis(300), SolverOutcome::Unknown("timeout".into())),
    ];
    let mut solver_ok = 0;
    for (path, timeout, want) in expected {
        match run_external_solver(&path, &f, timeout) {
            Ok(got) if got == want => solver_ok += 1,
            _ => violations += 1,
        }
    }
    Outcome::new(
        "io",
        violations,
        format!("1000 DIMACS + 1000 circuit round-trips; stub solver outcomes classified {solver_ok}/3"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let circuits = circuits();
    let mut repairs = Repairs::default();
    let mut outcomes = vec![
        equisatisfiability(&corpus, &mut repairs),
        hierarchy(&corpus),
        bce_confluence(&corpus, &mut repairs),
        containment(&circuits, &mut repairs),
        encoding_correctness(&circuits),
    ];
    outcomes.push(Outcome::new(
        "reconstruction",
        repairs.failed,
        format!("{} repaired models checked against their original formulas", repairs.checked),
    ));
    outcomes.push(benchmarks());
    outcomes.push(io_round_trips(&corpus, &circuits));

    for o in &outcomes {
        println!("{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        outcomes.len() - failed,
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
