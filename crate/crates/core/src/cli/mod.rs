//! The `ztc` command line: check, solve, emit, reconstruct and run-solver.

pub mod report;
mod solver;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use report::{Outcome, Row, RunReport};

use crate::fms::{search, SearchConfig, SearchResult};
use crate::smt_emit::{emit_script, Dialect, SmtScript};
use crate::witness::{parse_output, reconstruct, Origin, Status, Witness};
use crate::zparse::parse_file;
use crate::ztype::{typecheck, TypedSpec};

pub const EXIT_OK: i32 = 0;
/// Some spec failed to parse, check, emit or reconstruct.
pub const EXIT_SPEC: i32 = 1;
/// Bad flags, unreadable files, missing solver.
pub const EXIT_ENV: i32 = 2;

pub const SOLVER_ENV: &str = "ZTC_SOLVER_BIN";

#[derive(Debug, Parser)]
#[command(name = "ztc", version, about = "Z test specifications: checking, finite-model search and SMT embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DialectArg {
    Yices,
    Cvc3,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Dialect {
        match d {
            DialectArg::Yices => Dialect::Yices,
            DialectArg::Cvc3 => Dialect::Cvc3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and type-check only.
    Check { files: Vec<PathBuf> },
    /// Look for witnesses by finite-model search.
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Candidate-set size per type.
        #[arg(long, default_value_t = 3)]
        fss: usize,
        /// Most finite-model elements to explore per spec.
        #[arg(long, default_value_t = 10_000)]
        max: usize,
        /// Pad numeric seeds up to FSS when the spec has fewer literals.
        #[arg(long)]
        pad_numeric: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Write one solver script per spec.
    Emit {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        dialect: DialectArg,
        /// Replace basic types by three-element enumerations.
        #[arg(long)]
        variant: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Turn a solver's answer back into a Z test case and verify it.
    Reconstruct {
        script: PathBuf,
        model: PathBuf,
        spec_file: PathBuf,
        /// Spec to check the binding against; defaults to the one named in the script.
        #[arg(long)]
        spec: Option<String>,
        /// Print the witness as JSON instead of a test-case schema.
        #[arg(long)]
        json: bool,
    },
    /// Emit, run an external solver, and reconstruct its models.
    RunSolver {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Solver executable; falls back to $ZTC_SOLVER_BIN.
        #[arg(long)]
        solver_bin: Option<PathBuf>,
        /// Extra argument passed before the script path (repeatable).
        #[arg(long = "solver-arg", allow_hyphen_values = true)]
        solver_args: Vec<String>,
        #[arg(long, value_enum)]
        dialect: DialectArg,
        #[arg(long)]
        variant: bool,
        /// Seconds per solver call.
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        /// Where scripts are written; defaults to a temporary directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// One spec of an input file, type-checked or not.
#[derive(Debug, Clone)]
pub struct Unit {
    pub file: String,
    pub name: String,
    pub spec: Result<TypedSpec, String>,
}

/// Loads every spec of every file. Unreadable files are environment errors; a file that
/// does not parse becomes a single failed unit.
pub fn load(files: &[PathBuf]) -> Result<Vec<Unit>, String> {
    let mut units = Vec::new();
    for path in files {
        let file = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| format!("{file}: {e}"))?;
        match parse_file(&text) {
            Err(e) => {
                let name = path.file_stem().map_or(file.clone(), |s| s.to_string_lossy().into_owned());
                units.push(Unit { file, name, spec: Err(format!("parse error at {e}")) });
            }
            Ok(src) => {
                for spec in src.flattened() {
                    let checked = typecheck(&spec, &src.types).map_err(|e| e.to_string());
                    units.push(Unit { file: file.clone(), name: spec.name.clone(), spec: checked });
                }
            }
        }
    }
    Ok(units)
}

fn row(u: &Unit, mode: &str, result: Outcome, detail: String, start: Instant) -> Row {
    Row {
        name: u.name.clone(),
        file: u.file.clone(),
        mode: mode.to_string(),
        result,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
        artifacts: Vec::new(),
        witness: None,
    }
}

fn pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(p) => p.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

pub fn solve_unit(u: &Unit, cfg: &SearchConfig) -> Row {
    let start = Instant::now();
    let spec = match &u.spec {
        Ok(s) => s,
        Err(e) => return row(u, "fms", Outcome::Error, e.clone(), start),
    };
    let s = search(spec, cfg);
    let mut r = match s.result {
        SearchResult::Witness(env) => {
            let w = Witness::verify(spec, env, Origin::FiniteModelSearch, None);
            let detail = if w.confirmed() { "verified".to_string() } else { format!("rejected: {}", w.verdict) };
            let mut r = row(u, "fms", if w.confirmed() { Outcome::Witness } else { Outcome::Error }, detail, start);
            r.witness = Some(w.to_json());
            r
        }
        SearchResult::Exhausted { at: Some(i) } => {
            row(u, "fms", Outcome::Exhausted, format!("no candidate survives predicate {}", i + 1), start)
        }
        SearchResult::Exhausted { at: None } => row(u, "fms", Outcome::Exhausted, "a variable has no candidates".into(), start),
        SearchResult::Capped => row(u, "fms", Outcome::Capped, format!("explored {} elements", s.stats.explored), start),
    };
    if !s.stats.notes.is_empty() {
        let notes: Vec<String> = s.stats.notes.iter().map(|n| n.to_string()).collect();
        r.detail = format!("{} ({})", r.detail, notes.join("; "));
    }
    r
}

pub fn solve(units: &[Unit], cfg: &SearchConfig, jobs: Option<usize>) -> RunReport {
    RunReport::new(pool(jobs, || units.par_iter().map(|u| solve_unit(u, cfg)).collect()))
}

fn emit_unit(u: &Unit, d: Dialect, variant: bool, out: &Path) -> (Row, Option<SmtScript>) {
    let start = Instant::now();
    let mode = format!("emit-{}{}", d.name(), if variant { "-variant" } else { "" });
    let spec = match &u.spec {
        Ok(s) => s,
        Err(e) => return (row(u, &mode, Outcome::Error, e.clone(), start), None),
    };
    match emit_script(spec, d, variant) {
        Err(errs) => {
            let msg: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
            (row(u, &mode, Outcome::Error, msg.join("; "), start), None)
        }
        Ok(script) => {
            let path = out.join(script.file_name());
            if let Err(e) = fs::write(&path, script.text()) {
                return (row(u, &mode, Outcome::Error, format!("{}: {e}", path.display()), start), None);
            }
            let mut r = row(u, &mode, Outcome::Emitted, format!("{} asserts", script.asserts().count()), start);
            r.artifacts.push(path.display().to_string());
            (r, Some(script))
        }
    }
}

pub fn emit(units: &[Unit], d: Dialect, variant: bool, out: &Path) -> RunReport {
    RunReport::new(units.par_iter().map(|u| emit_unit(u, d, variant, out).0).collect())
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub bin: PathBuf,
    pub args: Vec<String>,
    pub dialect: Dialect,
    pub variant: bool,
    pub timeout: Duration,
    pub out: PathBuf,
}

fn solver_unit(u: &Unit, o: &SolverOptions) -> Row {
    let start = Instant::now();
    let (mut r, script) = emit_unit(u, o.dialect, o.variant, &o.out);
    r.mode = format!("solver-{}", o.dialect.name());
    let (Some(script), Ok(spec)) = (script, &u.spec) else { return r };
    let path = o.out.join(script.file_name());
    let text = match solver::run(&o.bin, &o.args, &path, o.timeout) {
        Ok(t) => t,
        Err(e) => {
            r.result = Outcome::Error;
            r.detail = e.to_string();
            r.elapsed_ms = start.elapsed().as_millis() as u64;
            return r;
        }
    };
    let out = parse_output(&text, &script);
    let (result, detail) = match &out.status {
        Status::Unsat => (Outcome::Unsat, String::new()),
        Status::ParseFailure { .. } => (Outcome::Error, out.status.to_string()),
        s => {
            let result = if *s == Status::Sat { Outcome::Sat } else { Outcome::Unknown };
            match reconstruct(&out, &script, spec) {
                Ok(w) => {
                    let d = if w.confirmed() { "verified".to_string() } else { format!("not a witness: {}", w.verdict) };
                    r.witness = Some(w.to_json());
                    (result, d)
                }
                Err(e) => (result, format!("no witness: {e}")),
            }
        }
    };
    r.result = result;
    r.detail = detail;
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

pub fn run_solver(units: &[Unit], o: &SolverOptions, jobs: Option<usize>) -> RunReport {
    RunReport::new(pool(jobs, || units.par_iter().map(|u| solver_unit(u, o)).collect()))
}

/// The spec name, dialect and variant flag recorded in a script's header.
pub fn script_header(text: &str) -> Option<(String, Dialect, bool)> {
    let mut spec = None;
    let mut dv = None;
    for line in text.lines() {
        if !line.starts_with([';', '%']) {
            continue;
        }
        let body = line.trim_start_matches([';', '%']).trim();
        if let Some(name) = body.strip_prefix("spec:") {
            spec = Some(name.trim().to_string());
        } else if let Some(rest) = body.strip_prefix("dialect:") {
            let (d, v) = rest.split_once(", variant:")?;
            dv = Some((Dialect::parse(d.trim())?, v.trim() == "true"));
        }
    }
    let (d, v) = dv?;
    Some((spec?, d, v))
}

/// Re-derives the script from its spec, then reads the model against it.
pub fn reconstruct_files(script: &Path, model: &Path, spec_file: &Path, check: Option<&str>) -> Result<(Witness, TypedSpec), (i32, String)> {
    let read = |p: &Path| fs::read_to_string(p).map_err(|e| (EXIT_ENV, format!("{}: {e}", p.display())));
    let (script_text, model_text, src) = (read(script)?, read(model)?, read(spec_file)?);
    let (name, d, variant) = script_header(&script_text)
        .ok_or_else(|| (EXIT_SPEC, format!("{}: no ztc header naming the spec and dialect", script.display())))?;
    let src = parse_file(&src).map_err(|e| (EXIT_SPEC, format!("{}:{e}", spec_file.display())))?;
    let typed = |n: &str| -> Result<TypedSpec, (i32, String)> {
        let s = src.flatten(n).ok_or_else(|| (EXIT_SPEC, format!("{}: no spec `{n}`", spec_file.display())))?;
        typecheck(&s, &src.types).map_err(|e| (EXIT_SPEC, format!("{n}: {e}")))
    };
    let emitted_from = typed(&name)?;
    let emitted = emit_script(&emitted_from, d, variant).map_err(|e| (EXIT_SPEC, format!("{name}: {}", e[0])))?;
    if emitted.text() != script_text {
        eprintln!("warning: {} differs from the script emitted for `{name}`", script.display());
    }
    let target = match check {
        Some(n) => typed(n)?,
        None => emitted_from,
    };
    let out = parse_output(&model_text, &emitted);
    let w = reconstruct(&out, &emitted, &target).map_err(|e| (EXIT_SPEC, format!("{}: {e}", model.display())))?;
    Ok((w, target))
}

fn check(files: &[PathBuf]) -> i32 {
    let mut code = EXIT_OK;
    for path in files {
        let file = path.display();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{file}: {e}");
                return EXIT_ENV;
            }
        };
        let src = match parse_file(&text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{file}:{e}");
                code = EXIT_SPEC;
                continue;
            }
        };
        if src.specs.is_empty() {
            eprintln!("{file}: warning: no specs");
            continue;
        }
        let mut ok = 0;
        for spec in src.flattened() {
            match typecheck(&spec, &src.types) {
                Ok(t) => {
                    ok += 1;
                    for w in &t.warnings {
                        eprintln!("{file}: spec {}: warning: {w}", spec.name);
                    }
                }
                Err(e) => {
                    eprintln!("{file}: spec {}: {e}", spec.name);
                    code = EXIT_SPEC;
                }
            }
        }
        println!("{file}: {ok} of {} specs ok", src.specs.len());
    }
    code
}

fn finish(report: &RunReport, json: Option<&Path>) -> i32 {
    println!("{report}");
    if let Some(p) = json {
        if let Err(e) = fs::write(p, report.to_json()) {
            eprintln!("{}: {e}", p.display());
            return EXIT_ENV;
        }
    }
    if report.has_errors() {
        EXIT_SPEC
    } else {
        EXIT_OK
    }
}

pub fn execute(cli: Cli) -> i32 {
    match cli.command {
        Command::Check { files } => check(&files),
        Command::Solve { files, fss, max, pad_numeric, json, jobs } => {
            let cfg = match SearchConfig::new(fss, max) {
                Ok(c) => c.with_padding(pad_numeric),
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_ENV;
                }
            };
            match load(&files) {
                Ok(units) => finish(&solve(&units, &cfg, jobs), json.as_deref()),
                Err(e) => {
                    eprintln!("{e}");
                    EXIT_ENV
                }
            }
        }
        Command::Emit { files, dialect, variant, out, json } => {
            if let Err(e) = fs::create_dir_all(&out) {
                eprintln!("{}: {e}", out.display());
                return EXIT_ENV;
            }
            match load(&files) {
                Ok(units) => finish(&emit(&units, dialect.into(), variant, &out), json.as_deref()),
                Err(e) => {
                    eprintln!("{e}");
                    EXIT_ENV
                }
            }
        }
        Command::Reconstruct { script, model, spec_file, spec, json } => {
            match reconstruct_files(&script, &model, &spec_file, spec.as_deref()) {
                Ok((w, spec)) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&w.to_json()).expect("witness serializes"));
                    } else {
                        println!("-- origin: {}, verdict: {}", w.origin.name(), w.verdict);
                        print!("{}", w.test_case(&spec));
                    }
                    EXIT_OK
                }
                Err((code, msg)) => {
                    eprintln!("error: {msg}");
                    code
                }
            }
        }
        Command::RunSolver { files, solver_bin, solver_args, dialect, variant, timeout, out, json, jobs } => {
            let Some(bin) = solver_bin.or_else(|| std::env::var_os(SOLVER_ENV).map(PathBuf::from)) else {
                eprintln!("error: no solver given; pass --solver-bin or set {SOLVER_ENV}");
                return EXIT_ENV;
            };
            if !bin.is_file() {
                eprintln!("error: solver binary {} not found", bin.display());
                return EXIT_ENV;
            }
            if !(timeout >= 0.0 && timeout.is_finite()) {
                eprintln!("error: timeout must be a non-negative number of seconds");
                return EXIT_ENV;
            }
            let out = out.unwrap_or_else(|| std::env::temp_dir().join(format!("ztc-{}", std::process::id())));
            if let Err(e) = fs::create_dir_all(&out) {
                eprintln!("{}: {e}", out.display());
                return EXIT_ENV;
            }
            let units = match load(&files) {
                Ok(u) => u,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_ENV;
                }
            };
            let o = SolverOptions {
                bin,
                args: solver_args,
                dialect: dialect.into(),
                variant,
                timeout: Duration::from_secs_f64(timeout),
                out,
            };
            finish(&run_solver(&units, &o, jobs), json.as_deref())
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ENV } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
