// SPDX-License-Identifier: Apache-2.0

//! `cnfprep`: preprocess CNF, encode circuits, generate benchmarks, check
//! results with the brute-force oracle and run external solvers.
//!
//! Exit codes: 0 success, 1 usage/parse/backend error, 2 verification
//! disagreement, 10 satisfiable, 20 unsatisfiable.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cnfprep::bench::{gen_ephp, gen_php, gen_xor_ring_circuit, gen_xor_unsat};
use cnfprep::circuit::{normalize_circuit, simplify_with, Passes};
use cnfprep::elim::{parse_technique_list, run_pipeline, PipelineConfig};
use cnfprep::encode::{encode_with_map, Encoding, VarMap};
use cnfprep::formula::{Assignment, CnfFormula};
use cnfprep::io::{
    parse_circuit, parse_dimacs_with, parse_stack, run_external_solver_with_args, write_atomic, write_circuit,
    write_dimacs, write_stack, write_stats, write_varmap, DimacsOptions, SolverOutcome,
};
use cnfprep::oracle::{brute_force_sat, equisat, OracleBound, DEFAULT_MAX_VARS};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;

#[derive(Parser, Debug)]
#[command(name = "cnfprep", version, about = "CNF preprocessing and circuit encoding toolkit")]
struct Cli {
    /// Reject DIMACS input whose header clause count is wrong.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a clause elimination pipeline on a DIMACS file.
    Prep {
        input: PathBuf,
        /// Output DIMACS; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Comma-separated technique names, applied in order.
        #[arg(short, long, default_value = "bce")]
        techniques: String,
        /// Repeat the technique list until nothing changes.
        #[arg(long)]
        global_fixpoint: bool,
        /// Allowed clause growth per eliminated variable.
        #[arg(long, default_value_t = 0)]
        ve_bound: usize,
        /// Where to write the reconstruction stack.
        #[arg(long)]
        stack: Option<PathBuf>,
        /// Where to write the JSON statistics document.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Translate a circuit to CNF.
    Encode {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = EncodingArg::Tst)]
        encoding: EncodingArg,
        /// Simplifications to run first: any of coi, nsi, mir, or `all`.
        #[arg(long, default_value = "")]
        simplify: String,
        /// Where to write the gate-to-variable map.
        #[arg(long)]
        varmap: Option<PathBuf>,
    },
    /// Write a benchmark instance.
    Gen {
        #[arg(value_enum)]
        family: Family,
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two formulas for equisatisfiability, or check a repaired model.
    Verify {
        /// Formula A (or, with --reconstruct, the stack file).
        first: PathBuf,
        /// Formula B (or, with --reconstruct, the model file).
        second: PathBuf,
        /// Original formula, for reconstruction checks.
        original: Option<PathBuf>,
        /// Check that the stack repairs the model into a model of the original.
        #[arg(long)]
        reconstruct: bool,
        #[arg(long, env = "CNFPREP_ORACLE_BOUND", default_value_t = DEFAULT_MAX_VARS)]
        bound: u32,
    },
    /// Decide satisfiability with the oracle or an external solver.
    Solve {
        input: PathBuf,
        /// Use the brute-force oracle.
        #[arg(long, conflicts_with = "solver", required_unless_present = "solver")]
        oracle: bool,
        /// External solver executable; the DIMACS path is its last argument.
        #[arg(long)]
        solver: Option<PathBuf>,
        /// Extra arguments passed to the solver before the input path.
        #[arg(long = "solver-arg", allow_hyphen_values = true)]
        solver_args: Vec<String>,
        /// Timeout for the external solver, in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long, env = "CNFPREP_ORACLE_BOUND", default_value_t = DEFAULT_MAX_VARS)]
        bound: u32,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum EncodingArg {
    Tst,
    Pg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    Php,
    Ephp,
    Xorring,
    /// The parity ring as circuit text.
    Xorcircuit,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_cnf(path: &Path, strict: bool) -> Result<CnfFormula> {
    let parsed = parse_dimacs_with(&read(path)?, DimacsOptions { strict })
        .with_context(|| format!("cannot parse {}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.formula)
}

fn parse_passes(s: &str) -> Result<Passes> {
    let mut p = Passes {
        coi: false,
        nsi: false,
        mir: false,
    };
    for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        match name.to_ascii_lowercase().as_str() {
            "coi" => p.coi = true,
            "nsi" => p.nsi = true,
            "mir" => p.mir = true,
            "all" => p = Passes::ALL,
            other => bail!("unknown simplification `{other}`"),
        }
    }
    Ok(p)
}

fn model_text(a: &Assignment) -> String {
    let mut out = String::from("v");
    for v in 1..=a.num_vars() {
        let lit = if a.get(v).unwrap_or(false) { v as i64 } else { -(v as i64) };
        write!(out, " {lit}").expect("write to string");
    }
    out.push_str(" 0\n");
    out
}

/// Reads a model from `v` lines or bare literals; `c` and `s` lines are
/// ignored.
fn parse_model(text: &str) -> Result<Vec<i64>> {
    let mut lits = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with('c') || t.starts_with('s') {
            continue;
        }
        let t = t.strip_prefix('v').unwrap_or(t);
        for tok in t.split_whitespace() {
            let v: i64 = tok.parse().with_context(|| format!("bad model token `{tok}`"))?;
            if v != 0 {
                lits.push(v);
            }
        }
    }
    Ok(lits)
}

fn cmd_prep(
    input: &Path,
    output: Option<&Path>,
    config: &PipelineConfig,
    stack_path: Option<&Path>,
    stats_path: Option<&Path>,
    strict: bool,
) -> Result<u8> {
    let f = load_cnf(input, strict)?;
    let out = run_pipeline(f, config)?;
    // the header names only variables that still occur
    let mut reduced = CnfFormula::new(out.formula.max_var());
    for (_, c) in out.formula.iter() {
        reduced.add_clause(c.clone());
    }
    emit(output, &write_dimacs(&reduced))?;
    if let Some(p) = stack_path {
        write_atomic(p, write_stack(&out.stack).as_bytes()).with_context(|| format!("cannot write {}", p.display()))?;
    }
    if let Some(p) = stats_path {
        write_stats(&out.report, out.unsat, p).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if out.unsat { EXIT_UNSAT } else { EXIT_OK })
}

fn cmd_encode(
    input: &Path,
    output: Option<&Path>,
    encoding: EncodingArg,
    passes: Passes,
    varmap: Option<&Path>,
) -> Result<u8> {
    let c = parse_circuit(&read(input)?).with_context(|| format!("cannot parse {}", input.display()))?;
    let n = normalize_circuit(&c);
    let (s, fixed) = simplify_with(&n, passes);
    let mut vm = VarMap::build(&s)?;
    vm.fixed = fixed;
    let enc = match encoding {
        EncodingArg::Tst => Encoding::Tseitin,
        EncodingArg::Pg => Encoding::PlaistedGreenbaum,
    };
    let f = encode_with_map(&s, &vm, enc)?;
    emit(output, &write_dimacs(&f))?;
    if let Some(p) = varmap {
        write_atomic(p, write_varmap(&n, &vm).as_bytes()).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(EXIT_OK)
}

fn cmd_gen(family: Family, n: u32, output: Option<&Path>) -> Result<u8> {
    let (lo, hi) = match family {
        Family::Php => (1, 64),
        Family::Ephp => (2, 32),
        Family::Xorring | Family::Xorcircuit => (1, 1_000_000),
    };
    if !(lo..=hi).contains(&n) {
        bail!("n must be in {lo}..={hi} for {family:?}");
    }
    let text = match family {
        Family::Php => write_dimacs(&gen_php(n)),
        Family::Ephp => write_dimacs(&gen_ephp(n)),
        Family::Xorring => write_dimacs(&gen_xor_unsat(n)),
        Family::Xorcircuit => write_circuit(&gen_xor_ring_circuit(n)),
    };
    emit(output, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    first: &Path,
    second: &Path,
    original: Option<&Path>,
    reconstruct: bool,
    bound: &OracleBound,
    strict: bool,
) -> Result<u8> {
    if !reconstruct {
        if original.is_some() {
            bail!("a third file is only accepted with --reconstruct");
        }
        let a = load_cnf(first, strict)?;
        let b = load_cnf(second, strict)?;
        let agree = equisat(&a, &b, bound)?;
        println!("{}", if agree { "equisatisfiable" } else { "not equisatisfiable" });
        return Ok(if agree { EXIT_OK } else { EXIT_DISAGREE });
    }
    let Some(original) = original else {
        bail!("--reconstruct needs <stack> <model> <original>");
    };
    let stack = parse_stack(&read(first)?).with_context(|| format!("cannot parse {}", first.display()))?;
    let lits = parse_model(&read(second)?)?;
    let orig = load_cnf(original, strict)?;
    let mut model = Assignment::new(orig.num_vars());
    for v in lits {
        let var = u32::try_from(v.unsigned_abs()).context("model variable out of range")?;
        if var > orig.num_vars() {
            model.resize(var);
        }
        model.set_var(var, v > 0);
    }
    let repaired = match stack.reconstruct_model(&model, orig.num_vars()) {
        Ok(m) => m,
        Err(e) => {
            println!("reconstruction failed: {e}");
            return Ok(EXIT_DISAGREE);
        }
    };
    if orig.iter().all(|(_, c)| repaired.satisfies_clause(c)) {
        println!("reconstructed model satisfies the original");
        Ok(EXIT_OK)
    } else {
        println!("reconstructed model falsifies the original");
        Ok(EXIT_DISAGREE)
    }
}

fn report(result: Option<&Assignment>) -> u8 {
    match result {
        Some(m) => {
            print!("s SATISFIABLE\n{}", model_text(m));
            EXIT_SAT
        }
        None => {
            println!("s UNSATISFIABLE");
            EXIT_UNSAT
        }
    }
}

fn cmd_solve(
    input: &Path,
    solver: Option<&Path>,
    solver_args: &[String],
    timeout: Duration,
    bound: &OracleBound,
    strict: bool,
) -> Result<u8> {
    let f = load_cnf(input, strict)?;
    let Some(solver) = solver else {
        return Ok(report(brute_force_sat(&f, bound)?.as_ref()));
    };
    match run_external_solver_with_args(solver, solver_args, &f, timeout)? {
        SolverOutcome::Sat(m) => {
            if !f.iter().all(|(_, c)| m.satisfies_clause(c)) {
                bail!("solver model does not satisfy the formula");
            }
            Ok(report(Some(&m)))
        }
        SolverOutcome::Unsat => Ok(report(None)),
        SolverOutcome::Unknown(reason) => {
            println!("s UNKNOWN");
            eprintln!("solver gave no answer: {reason}");
            Ok(EXIT_OK)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let strict = cli.strict;
    match cli.command {
        Command::Prep {
            input,
            output,
            techniques,
            global_fixpoint,
            ve_bound,
            stack,
            stats,
        } => {
            let config = PipelineConfig {
                techniques: parse_technique_list(&techniques)?,
                global_fixpoint,
                ve_growth_bound: ve_bound,
            };
            cmd_prep(&input, output.as_deref(), &config, stack.as_deref(), stats.as_deref(), strict)
        }
        Command::Encode {
            input,
            output,
            encoding,
            simplify,
            varmap,
        } => cmd_encode(&input, output.as_deref(), encoding, parse_passes(&simplify)?, varmap.as_deref()),
        Command::Gen { family, n, output } => cmd_gen(family, n, output.as_deref()),
        Command::Verify {
            first,
            second,
            original,
            reconstruct,
            bound,
        } => cmd_verify(
            &first,
            &second,
            original.as_deref(),
            reconstruct,
            &OracleBound { max_vars: bound },
            strict,
        ),
        Command::Solve {
            input,
            oracle: _,
            solver,
            solver_args,
            timeout,
            bound,
        } => {
            if !(timeout.is_finite() && timeout > 0.0) {
                bail!("timeout must be positive");
            }
            cmd_solve(
                &input,
                solver.as_deref(),
                &solver_args,
                Duration::from_secs_f64(timeout),
                &OracleBound { max_vars: bound },
                strict,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
