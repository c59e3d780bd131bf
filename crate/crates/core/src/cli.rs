//! Command-line front end. All results go to stdout (or `--output`) as JSON,
//! diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical failure or failed
//! self-test.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::bounds::{best_bound_with, BestOptions, GridOptions, DEFAULT_REL_TOL};
use crate::classes::{
    focus_excluded_fixture, literature_bound, paper_bound, ClassId, ClassSpec, LiteratureSource,
    PaperBound,
};
use crate::error::{Error, Result};
use crate::fonts::compute_fonts4;
use crate::invariants::{
    i34, invariant_set, report_json, set_fault_injection, three_tangle_pure, Traced, Triple,
};
use crate::io::{c64_to_json, parse_complex, rho_from_json, state_from_json, AnyState};
use crate::qstate::{PureState4, C64};
use crate::rank2::{
    decompose_rank2, ghzw_bound, ghzw_decomposition, ghzw_printed_bound, ghzw_state,
    ghzw_threshold, ghzw_x0, GhzwBranch, Rank2Options,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tanglebound",
    version,
    about = "Four-qubit invariants and three-tangle upper bounds"
)]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Corrupt one invariant coefficient (mutation check for `selftest`).
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariant sets of a state for each traced qubit.
    Invariants(InvariantsArgs),
    /// Upper bounds on the three-tangle of reduced states.
    Bound(BoundArgs),
    /// Bounds for a class representative next to the closed forms.
    Classes(ClassesArgs),
    /// GHZ/W mixture reference values and decompositions.
    Ghzw(GhzwArgs),
    /// Bound and decomposition for a rank-2 three-qubit density matrix.
    Decompose(DecomposeArgs),
    /// Bounds over a parameter grid for one class.
    Sweep(SweepArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    /// JSON state file: {"n_qubits": 3|4, "amps": [[re, im], ...]}.
    #[arg(long, value_name = "PATH")]
    state: PathBuf,
    /// Only this traced qubit (A2, A3 or A4).
    #[arg(long, value_parser = parse_traced)]
    traced: Option<Traced>,
    /// Include the negativity font determinants.
    #[arg(long)]
    fonts: bool,
    /// Normalize the state instead of rejecting it.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args, Debug, Clone)]
struct TolArgs {
    /// Polar samples of the grid method.
    #[arg(long, default_value_t = 256)]
    n_theta: usize,
    /// Azimuthal samples of the grid method.
    #[arg(long, default_value_t = 256)]
    n_phi: usize,
    /// Coordinate-descent refinement iterations of the grid method.
    #[arg(long, default_value_t = 50)]
    refine_iters: usize,
    /// Relative tolerance for treating invariants as zero.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
}

impl TolArgs {
    fn options(&self) -> BestOptions {
        BestOptions {
            grid: GridOptions {
                n_theta: self.n_theta,
                n_phi: self.n_phi,
                refine_iters: self.refine_iters,
            },
            rel_tol: self.rel_tol,
        }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, value_name = "PATH")]
    state: PathBuf,
    /// Qubit triple (A1A2A3, A1A2A4, A1A3A4); all three when omitted.
    #[arg(long, value_parser = parse_triple)]
    triple: Option<Triple>,
    #[arg(long)]
    normalize: bool,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug)]
struct ClassesArgs {
    /// Class I..IX (roman numeral or number).
    #[arg(long, value_parser = parse_class)]
    id: ClassId,
    #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
    a: Option<C64>,
    #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
    b: Option<C64>,
    #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
    c: Option<C64>,
    #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
    d: Option<C64>,
    #[arg(long, value_parser = parse_triple)]
    triple: Option<Triple>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchArg {
    Auto,
    Below,
    Above,
}

#[derive(Args, Debug)]
struct GhzwArgs {
    /// GHZ weight in [0, 1].
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::Auto)]
    branch: BranchArg,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// JSON density matrix: {"dim": 8, "rho": [[[re, im] x8] x8]}.
    #[arg(long, value_name = "PATH")]
    rho: PathBuf,
    #[arg(long, default_value_t = 24)]
    theta_samples: usize,
    #[arg(long, default_value_t = 128)]
    grid: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CompareArg {
    Regu,
    Osterloh,
    Paper,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long = "class", value_parser = parse_class)]
    class: ClassId,
    /// Comma-separated `name=lo:hi:n` ranges or `name=re+imi` fixed values.
    #[arg(long, allow_hyphen_values = true)]
    param_grid: String,
    #[arg(long, value_enum, default_value_t = CompareArg::Regu)]
    compare: CompareArg,
    #[arg(long, value_parser = parse_triple)]
    triple: Option<Triple>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run a single criterion (1-8).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    criterion: Option<u8>,
}

fn parse_c64(s: &str) -> std::result::Result<C64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn parse_triple(s: &str) -> std::result::Result<Triple, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_traced(s: &str) -> std::result::Result<Traced, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_class(s: &str) -> std::result::Result<ClassId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<(Value, i32), Failure>;

/// Caps the global rayon pool from `TANGLEBOUND_THREADS`.
pub fn configure_threads() {
    if let Some(n) = std::env::var("TANGLEBOUND_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };

    set_fault_injection(cli.inject_fault);
    let result = dispatch(&cli.command);
    set_fault_injection(false);

    match result {
        Ok((value, code)) => {
            let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            text.push('\n');
            let written = match &cli.output {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(err, "error: cannot write output: {msg}");
                return EXIT_INPUT;
            }
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(err, "numerical failure: {msg}");
            EXIT_NUMERICAL
        }
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Invariants(a) => cmd_invariants(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Classes(a) => cmd_classes(a),
        Command::Ghzw(a) => cmd_ghzw(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_state4(path: &Path, normalize: bool) -> std::result::Result<PureState4, Failure> {
    match state_from_json(&read(path)?)? {
        AnyState::Four(s) if normalize => Ok(s.normalize()?),
        AnyState::Four(s) => Ok(s),
        AnyState::Three(_) => Err(Failure::Input("expected a four-qubit state".into())),
    }
}

fn cmd_invariants(a: &InvariantsArgs) -> CmdResult {
    let s = match state_from_json(&read(&a.state)?)? {
        AnyState::Three(s) => {
            let s = if a.normalize { s.normalize()? } else { s };
            let v = json!({
                "n_qubits": 3,
                "I34": c64_to_json(i34(&s)),
                "tau": three_tangle_pure(&s)?,
            });
            return Ok((v, EXIT_OK));
        }
        AnyState::Four(s) if a.normalize => s.normalize()?,
        AnyState::Four(s) => s,
    };
    let traced: Vec<Traced> = match a.traced {
        Some(t) => vec![t],
        None => Traced::ALL.to_vec(),
    };
    let reports = traced
        .iter()
        .map(|t| invariant_set(&s, *t).map(|set| report_json(&set)))
        .collect::<Result<Vec<_>>>()?;
    let mut v = json!({ "n_qubits": 4, "reports": reports });
    if a.fonts {
        v["fonts"] = compute_fonts4(&s).to_json();
    }
    Ok((v, EXIT_OK))
}

fn cmd_bound(a: &BoundArgs) -> CmdResult {
    let s = read_state4(&a.state, a.normalize)?;
    let opts = a.tol.options();
    let v = match a.triple {
        Some(t) => best_bound_with(&s, t, &opts)?.to_json(),
        None => {
            let reports = Triple::ALL
                .iter()
                .map(|t| best_bound_with(&s, *t, &opts).map(|r| r.to_json()))
                .collect::<Result<Vec<_>>>()?;
            json!({ "reports": reports })
        }
    };
    Ok((v, EXIT_OK))
}

fn paper_json(p: PaperBound) -> Value {
    match p {
        PaperBound::Zero => json!(0.0),
        PaperBound::Value(v) => json!(v),
        PaperBound::NotPrinted => json!("not-printed"),
    }
}

fn lit_json(r: &Result<f64>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(_) => json!("not-printed"),
    }
}

fn params_json(spec: &ClassSpec) -> Value {
    let mut m = Map::new();
    for (n, z) in spec.params() {
        m.insert(n.to_string(), c64_to_json(z));
    }
    Value::Object(m)
}

fn cmd_classes(a: &ClassesArgs) -> CmdResult {
    let spec = ClassSpec::new(a.id, a.a, a.b, a.c, a.d)?;
    let psi = spec.representative()?;
    let triples: Vec<Triple> = match a.triple {
        Some(t) => vec![t],
        None => Triple::ALL.to_vec(),
    };
    let opts = a.tol.options();
    let mut rows = Vec::new();
    for t in triples {
        let r = best_bound_with(&psi, t, &opts)?;
        let paper = paper_bound(&spec, t);
        let regu = literature_bound(&spec, t, LiteratureSource::Regu);
        let osterloh = literature_bound(&spec, t, LiteratureSource::Osterloh);
        let delta = |v: Option<f64>| v.map(|v| r.best - v);
        rows.push(json!({
            "triple": t.label(),
            "best_bound": r.best,
            "best_method": r.best_method.label(),
            "paper_bound": paper_json(paper),
            "literature": { "regu": lit_json(&regu), "osterloh": lit_json(&osterloh) },
            "deltas": {
                "paper": delta(paper.value()),
                "regu": delta(regu.ok()),
                "osterloh": delta(osterloh.ok()),
            },
        }));
    }
    let fixture = focus_excluded_fixture(a.id)
        .map(|v| json!({ "triple": "A2A3A4", "value": v, "computed": false }));
    let v = json!({
        "class": a.id.label(),
        "params": params_json(&spec),
        "rows": rows,
        "focus_excluded": fixture,
    });
    Ok((v, EXIT_OK))
}

fn cmd_ghzw(a: &GhzwArgs) -> CmdResult {
    let p = a.p;
    let threshold = ghzw_threshold();
    let branch = match a.branch {
        BranchArg::Below => GhzwBranch::Below,
        BranchArg::Above => GhzwBranch::Above,
        BranchArg::Auto if p <= threshold => GhzwBranch::Below,
        BranchArg::Auto => GhzwBranch::Above,
    };
    let bound = ghzw_bound(p)?;
    let d = ghzw_decomposition(p, branch)?;
    let v = json!({
        "p": p,
        "threshold": threshold,
        "x0": ghzw_x0(p).ok(),
        "bound": bound,
        "printed_bound": ghzw_printed_bound(p)?,
        "branch": branch.label(),
        "decomposition": d.to_json(),
        "reconstruction_error": d.reconstructed.max_abs_diff(&ghzw_state(p)?),
    });
    Ok((v, EXIT_OK))
}

fn cmd_decompose(a: &DecomposeArgs) -> CmdResult {
    let rho = rho_from_json(&read(&a.rho)?)?;
    let opts = Rank2Options {
        theta_samples: a.theta_samples,
        grid: a.grid,
    };
    let (w, d) = decompose_rank2(&rho, opts)?;
    let v = json!({
        "bound": w.value,
        "method": w.method.label(),
        "witness": w.to_json(),
        "decomposition": d.to_json(),
        "weight_sum": d.weight_sum(),
        "reconstruction_error": d.reconstructed.max_abs_diff(&rho),
    });
    Ok((v, EXIT_OK))
}

/// One `name=...` entry of `--param-grid`.
fn parse_axis(entry: &str) -> Result<(usize, Vec<C64>)> {
    let (name, spec) = entry
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected name=lo:hi:n, got {entry:?}")))?;
    let slot = ["a", "b", "c", "d"]
        .iter()
        .position(|n| *n == name.trim())
        .ok_or_else(|| Error::Parse(format!("unknown parameter {name:?}")))?;
    let parts: Vec<&str> = spec.split(':').collect();
    let values = match parts.as_slice() {
        [single] => vec![parse_complex(single)?],
        [lo, hi, n] => {
            let num = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Parse(format!("bad range bound {s:?}")))
            };
            let (lo, hi) = (num(lo)?, num(hi)?);
            let n: usize = n
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Parse(format!("bad point count {n:?}")))?;
            (0..n)
                .map(|k| {
                    let t = if n == 1 {
                        0.0
                    } else {
                        k as f64 / (n - 1) as f64
                    };
                    C64::new(lo + (hi - lo) * t, 0.0)
                })
                .collect()
        }
        _ => return Err(Error::Parse(format!("bad grid spec {spec:?}"))),
    };
    Ok((slot, values))
}

fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    let mut axes: Vec<(usize, Vec<C64>)> = Vec::new();
    for entry in a.param_grid.split(',').filter(|e| !e.trim().is_empty()) {
        let axis = parse_axis(entry)?;
        if axes.iter().any(|(s, _)| *s == axis.0) {
            return Err(Error::Parse(format!("parameter repeated in {entry:?}")).into());
        }
        axes.push(axis);
    }

    // cartesian product, first axis slowest
    let mut cells: Vec<[Option<C64>; 4]> = vec![[None; 4]];
    for (slot, values) in &axes {
        cells = cells
            .iter()
            .flat_map(|c| {
                values.iter().map(move |v| {
                    let mut c = *c;
                    c[*slot] = Some(*v);
                    c
                })
            })
            .collect();
    }
    let specs = cells
        .iter()
        .map(|p| ClassSpec::new(a.class, p[0], p[1], p[2], p[3]))
        .collect::<Result<Vec<_>>>()?;

    let triples: Vec<Triple> = match a.triple {
        Some(t) => vec![t],
        None => Triple::ALL.to_vec(),
    };
    let opts = a.tol.options();
    let jobs: Vec<(usize, ClassSpec, Triple)> = specs
        .iter()
        .enumerate()
        .flat_map(|(k, s)| triples.iter().map(move |t| (k, *s, *t)))
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(cell, spec, t)| -> Result<Value> {
            let best = best_bound_with(&spec.representative()?, t, &opts)?.best;
            let compare = match a.compare {
                CompareArg::Regu => literature_bound(&spec, t, LiteratureSource::Regu).ok(),
                CompareArg::Osterloh => literature_bound(&spec, t, LiteratureSource::Osterloh).ok(),
                CompareArg::Paper => paper_bound(&spec, t).value(),
            };
            Ok(json!({
                "cell": cell,
                "params": params_json(&spec),
                "triple": t.label(),
                "best": best,
                "compare": compare,
                "delta": compare.map(|c| best - c),
                "ok": compare.map(|c| best <= c + 1e-8),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_ok = rows.iter().all(|r| r["ok"].as_bool() != Some(false));
    let compare = match a.compare {
        CompareArg::Regu => "regu",
        CompareArg::Osterloh => "osterloh",
        CompareArg::Paper => "paper",
    };
    let v = json!({
        "class": a.class.label(),
        "compare": compare,
        "cells": specs.len(),
        "all_ok": all_ok,
        "rows": rows,
    });
    Ok((v, EXIT_OK))
}

fn cmd_selftest(a: &SelftestArgs) -> CmdResult {
    let outcomes = match a.criterion {
        Some(id) => vec![acceptance::criterion(id).expect("range checked by clap")?],
        None => acceptance::run_all()?,
    };
    let summary = acceptance::summary_json(&outcomes);
    let code = if summary["passed"].as_bool() == Some(true) {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    };
    Ok((summary, code))
}
