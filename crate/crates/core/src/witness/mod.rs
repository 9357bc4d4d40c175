//! Solver models back to Z: parsing, reconstruction and verification.

mod ground;
mod interp;
pub mod reader;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::json;
use thiserror::Error;

pub use ground::{synthesize_model, translate_env, GEnv, GVal};
pub use interp::{interpret_script, InterpError};
use reader::{Ast, Sx};

use crate::smt_emit::{Dialect, SmtScript, SymbolKind};
use crate::zcore::{SynKind, TypeExpr, Value};
use crate::zeval::{check_spec, Env, Verdict};
use crate::ztype::TypedSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unknown,
    Unsat,
    /// `line` is one-based.
    ParseFailure { line: usize, message: String },
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Sat => f.write_str("sat"),
            Status::Unknown => f.write_str("unknown"),
            Status::Unsat => f.write_str("unsat"),
            Status::ParseFailure { line, message } => write!(f, "parse failure at line {line}: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOutput {
    pub raw: String,
    pub status: Status,
    /// Emitted variable or constant name → model value.
    pub bindings: BTreeMap<String, GVal>,
}

fn status_of(word: &str) -> Option<Status> {
    match word.trim() {
        "sat" | "Satisfiable." | "satisfiable" => Some(Status::Sat),
        "unsat" | "Unsatisfiable." | "unsatisfiable" => Some(Status::Unsat),
        "unknown" | "Unknown." => Some(Status::Unknown),
        _ => None,
    }
}

/// Where a model line stores its value.
struct Loc {
    var: String,
    field: Option<String>,
    args: Option<Vec<GVal>>,
}

fn ground_term(t: &Ast) -> Result<GVal, String> {
    Ok(match t {
        Ast::Int(i) => GVal::Int(*i),
        Ast::Neg(x) => match **x {
            Ast::Int(i) => GVal::Int(-i),
            _ => return Err("non-literal negation".into()),
        },
        Ast::Bool(b) => GVal::Bool(*b),
        Ast::Sym(s) => GVal::Atom(s.clone()),
        Ast::Tuple(items) => GVal::Tuple(items.iter().map(ground_term).collect::<Result<_, _>>()?),
        _ => return Err(format!("not a ground value: {t:?}")),
    })
}

fn location(t: &Ast, script: &SmtScript) -> Result<Loc, String> {
    let known = |n: &str| script.symbols.values().any(|s| s.emitted == n);
    let base = |t: &Ast| -> Result<(String, Option<String>), String> {
        match t {
            Ast::Sym(s) if known(s) => Ok((s.clone(), None)),
            // Yices models flatten record fields as `<var>_<field>`
            Ast::Sym(s) => s
                .rsplit_once('_')
                .filter(|(v, _)| known(v))
                .map(|(v, f)| (v.to_string(), Some(f.to_string())))
                .ok_or_else(|| format!("unknown symbol `{s}`")),
            Ast::Field(r, f) => match &**r {
                Ast::Sym(s) => Ok((s.clone(), Some(f.clone()))),
                _ => Err("nested field selection".into()),
            },
            _ => Err(format!("unexpected model location {t:?}")),
        }
    };
    match t {
        Ast::App(f, args) => {
            let (var, field) = base(f)?;
            let mut leaves = Vec::new();
            for a in args {
                leaves.extend(ground_term(a)?.leaves());
            }
            Ok(Loc { var, field, args: Some(leaves) })
        }
        t => {
            let (var, field) = base(t)?;
            Ok(Loc { var, field, args: None })
        }
    }
}

fn store(bindings: &mut BTreeMap<String, GVal>, loc: Loc, value: GVal) {
    let slot = bindings.entry(loc.var).or_insert_with(|| match (&loc.field, &loc.args) {
        (Some(_), _) => GVal::Record(BTreeMap::new()),
        (None, Some(_)) => GVal::Map(BTreeMap::new()),
        (None, None) => GVal::Bool(false),
    });
    let slot = match (&loc.field, slot) {
        (Some(f), GVal::Record(fs)) => fs.entry(f.clone()).or_insert_with(|| match loc.args {
            Some(_) => GVal::Map(BTreeMap::new()),
            None => GVal::Bool(false),
        }),
        (_, slot) => slot,
    };
    match (loc.args, slot) {
        (Some(k), GVal::Map(m)) => {
            m.insert(k, value);
        }
        (_, slot) => *slot = value,
    }
}

/// Model lines as (one-based line number, lhs, rhs).
fn model_lines(text: &str, d: Dialect, first: usize) -> Result<Vec<(usize, Ast, Ast)>, (usize, String)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().skip(first) {
        let n = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with(d.comment()) {
            continue;
        }
        let eq = match d {
            Dialect::Yices => {
                let sx = reader::read_sexps(line).map_err(|e| (n, e.0))?;
                match sx.as_slice() {
                    [s @ Sx::List(_)] => reader::yices_term(s).map_err(|e| (n, e.0))?,
                    _ => return Err((n, "expected one `(= lhs value)` per line".into())),
                }
            }
            Dialect::Cvc3 => {
                let body = line.strip_prefix("ASSERT").unwrap_or(line).trim().trim_end_matches(';');
                reader::cvc3_term(body).map_err(|e| (n, e.0))?
            }
        };
        match eq {
            Ast::Eq(l, r) => out.push((n, *l, *r)),
            _ => return Err((n, "expected an equation".into())),
        }
    }
    Ok(out)
}

/// Reads solver output for `script`. A sat or unknown answer may be followed by model
/// lines; names the script does not declare are ignored unless they are malformed.
pub fn parse_output(text: &str, script: &SmtScript) -> SolverOutput {
    let d = script.dialect;
    let fail = |line: usize, message: String| SolverOutput {
        raw: text.to_string(),
        status: Status::ParseFailure { line, message },
        bindings: BTreeMap::new(),
    };
    let Some((idx, first)) = text.lines().enumerate().find(|(_, l)| !l.trim().is_empty()) else {
        return fail(1, "empty output".into());
    };
    let Some(status) = status_of(first) else { return fail(idx + 1, format!("unrecognized status `{}`", first.trim())) };
    let mut bindings = BTreeMap::new();
    if status != Status::Unsat {
        let lines = match model_lines(text, d, idx + 1) {
            Ok(l) => l,
            Err((n, m)) => return fail(n, m),
        };
        for (n, lhs, rhs) in lines {
            let value = match ground_term(&rhs) {
                Ok(v) => v,
                Err(m) => return fail(n, m),
            };
            match location(&lhs, script) {
                Ok(loc) => store(&mut bindings, loc, value),
                Err(m) if m.starts_with("unknown symbol") => continue,
                Err(m) => return fail(n, m),
            }
        }
    }
    SolverOutput { raw: text.to_string(), status, bindings }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    FiniteModelSearch,
    SolverModel,
    /// A model that came with an `unknown` answer.
    SolverPotential,
}

impl Origin {
    pub fn name(self) -> &'static str {
        match self {
            Origin::FiniteModelSearch => "finite-model-search",
            Origin::SolverModel => "solver-model",
            Origin::SolverPotential => "solver-potential",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub spec: String,
    pub env: Env,
    pub origin: Origin,
    pub status: Option<Status>,
    pub verdict: Verdict,
}

impl Witness {
    /// Checks `env` against `spec` and wraps it.
    pub fn verify(spec: &TypedSpec, env: Env, origin: Origin, status: Option<Status>) -> Witness {
        let verdict = check_spec(spec, &env);
        Witness { spec: spec.name().to_string(), env, origin, status, verdict }
    }

    /// True only when the binding satisfies the spec.
    pub fn confirmed(&self) -> bool {
        self.verdict.is_satisfied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bindings: serde_json::Map<String, serde_json::Value> =
            self.env.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
        json!({
            "spec": self.spec,
            "origin": self.origin.name(),
            "status": self.status.as_ref().map(|s| s.to_string()),
            "bindings": bindings,
            "verified": self.confirmed(),
            "verdict": self.verdict.to_string(),
        })
    }

    /// The witness as a test-case schema extending the spec, one equation per variable.
    pub fn test_case(&self, spec: &TypedSpec) -> String {
        let mut s = format!("spec {}_TC {{\n  {}\n|\n", self.spec, self.spec);
        let lines: Vec<String> = spec
            .vars
            .iter()
            .filter_map(|v| self.env.get(&v.name).map(|x| format!("  {} = {}", v.name, x)))
            .collect();
        s.push_str(&lines.join(";\n"));
        s.push_str("\n}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("solver answered {0}; there is no model to reconstruct")]
    NoModel(Status),
    #[error("model has no value for `{0}`")]
    MissingBinding(String),
    #[error("`{var}` has card {card} but {members} members")]
    CardMismatch { var: String, card: i64, members: usize },
    #[error("`{var}` is declared natural but the model gives {value}")]
    NegativeNat { var: String, value: i64 },
    #[error("model value {value} for `{var}` does not fit its type")]
    IllTyped { var: String, value: String },
}

struct Rebuild<'a> {
    script: &'a SmtScript,
    /// Model atom → Z constant, for basic types.
    aliases: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl Rebuild<'_> {
    fn basic(&mut self, ty: &str, atom: &str) -> Value {
        if let Some(c) = self.aliases.get(atom) {
            return Value::basic(ty, c);
        }
        // an element the solver invented: name it after its type, skipping names in use
        let mut k = 1;
        while self.used.contains(&format!("{ty}{k}")) {
            k += 1;
        }
        let name = format!("{ty}{k}");
        self.used.insert(name.clone());
        self.aliases.insert(atom.to_string(), name.clone());
        Value::basic(ty, &name)
    }

    fn ill(var: &str, v: &GVal) -> ReconstructError {
        ReconstructError::IllTyped { var: var.to_string(), value: v.to_string() }
    }

    /// Rebuilds an element of type `t` from its leaves, consuming them.
    fn element(&mut self, var: &str, t: &TypeExpr, leaves: &mut std::slice::Iter<GVal>) -> Result<Value, ReconstructError> {
        match t {
            TypeExpr::Product(l, r) => Ok(Value::pair(self.element(var, l, leaves)?, self.element(var, r, leaves)?)),
            t => {
                let v = leaves.next().ok_or_else(|| ReconstructError::MissingBinding(var.to_string()))?;
                self.scalar(var, t, v)
            }
        }
    }

    fn whole(&mut self, var: &str, t: &TypeExpr, v: &GVal) -> Result<Value, ReconstructError> {
        match t {
            TypeExpr::Product(..) => {
                let leaves = v.leaves();
                self.element(var, t, &mut leaves.iter())
            }
            t => self.scalar(var, t, v),
        }
    }

    fn key(&mut self, var: &str, t: &TypeExpr, k: &[GVal]) -> Result<Value, ReconstructError> {
        let mut it = k.iter();
        let v = self.element(var, t, &mut it)?;
        if it.next().is_some() {
            return Err(ReconstructError::IllTyped { var: var.to_string(), value: format!("{k:?}") });
        }
        Ok(v)
    }

    fn scalar(&mut self, var: &str, t: &TypeExpr, v: &GVal) -> Result<Value, ReconstructError> {
        match (t, v) {
            (TypeExpr::Int, GVal::Int(i)) => Ok(Value::Int(*i)),
            (TypeExpr::Nat, GVal::Int(i)) if *i < 0 => {
                Err(ReconstructError::NegativeNat { var: var.to_string(), value: *i })
            }
            (TypeExpr::Nat, GVal::Int(i)) => Ok(Value::Int(*i)),
            (TypeExpr::Free { name, constants }, GVal::Atom(a)) => constants
                .iter()
                .position(|c| self.script.emitted(c) == Some(a.as_str()) || c == a)
                .map(|i| Value::enum_const(name, &constants[i], i as u32))
                .ok_or_else(|| Self::ill(var, v)),
            (TypeExpr::Basic(b), GVal::Atom(a)) => Ok(self.basic(b, a)),
            (TypeExpr::Power(e), GVal::Map(m)) => {
                let mut out = BTreeSet::new();
                for (k, x) in m {
                    if *x == GVal::Bool(true) {
                        out.insert(self.key(var, e, k)?);
                    }
                }
                Ok(Value::Set(out))
            }
            (TypeExpr::Synonym(SynKind::Rel, args), _) => {
                self.scalar(var, &TypeExpr::power(TypeExpr::product(args[0].clone(), args[1].clone())), v)
            }
            (TypeExpr::Synonym(..), _) => self.var(var, t, v),
            (TypeExpr::Product(..), _) => self.whole(var, t, v),
            _ => Err(Self::ill(var, v)),
        }
    }

    fn field<'g>(var: &str, v: &'g GVal, f: &str) -> Result<&'g GVal, ReconstructError> {
        match v {
            GVal::Record(_) => v.field(f).ok_or_else(|| ReconstructError::MissingBinding(format!("{var}.{f}"))),
            _ => Err(Self::ill(var, v)),
        }
    }

    fn members<'g>(var: &str, m: &'g GVal) -> Result<Vec<&'g Vec<GVal>>, ReconstructError> {
        match m {
            GVal::Map(m) => Ok(m.iter().filter(|(_, x)| **x == GVal::Bool(true)).map(|(k, _)| k).collect()),
            _ => Err(Self::ill(var, m)),
        }
    }

    fn card(var: &str, v: &GVal, members: usize) -> Result<(), ReconstructError> {
        match Self::field(var, v, "card")? {
            GVal::Int(c) if *c == members as i64 => Ok(()),
            GVal::Int(c) => Err(ReconstructError::CardMismatch { var: var.to_string(), card: *c, members }),
            other => Err(Self::ill(var, other)),
        }
    }

    /// Folds a variable's model value back into a Z value of its declared type.
    fn var(&mut self, var: &str, declared: &TypeExpr, v: &GVal) -> Result<Value, ReconstructError> {
        match declared {
            TypeExpr::Synonym(k @ (SynKind::Pfun | SynKind::Ffun | SynKind::Seq), args) => {
                let (x, y) = match k {
                    SynKind::Seq => (TypeExpr::Nat, &args[0]),
                    _ => (args[0].clone(), &args[1]),
                };
                let dom = Self::members(var, Self::field(var, v, "dom")?)?;
                let GVal::Map(law) = Self::field(var, v, "law")? else { return Err(Self::ill(var, v)) };
                let mut pairs = BTreeSet::new();
                for k in &dom {
                    let y_val = law
                        .get(*k)
                        .ok_or_else(|| ReconstructError::MissingBinding(format!("{var}.law at {k:?}")))?;
                    pairs.insert(Value::pair(self.key(var, &x, k)?, self.whole(var, y, y_val)?));
                }
                if *k != SynKind::Pfun {
                    Self::card(var, v, dom.len())?;
                }
                Ok(Value::Set(pairs))
            }
            TypeExpr::Synonym(SynKind::Fun, args) => {
                let GVal::Map(m) = v else { return Err(Self::ill(var, v)) };
                let mut pairs = BTreeSet::new();
                for (k, y) in m {
                    pairs.insert(Value::pair(self.key(var, &args[0], k)?, self.whole(var, &args[1], y)?));
                }
                Ok(Value::Set(pairs))
            }
            TypeExpr::Synonym(SynKind::Finset, args) => {
                let members = Self::members(var, Self::field(var, v, "set")?)?;
                Self::card(var, v, members.len())?;
                let set = members.into_iter().map(|k| self.key(var, &args[0], k)).collect::<Result<_, _>>()?;
                Ok(Value::Set(set))
            }
            t => self.whole(var, t, v),
        }
    }
}

/// Rebuilds a Z binding from a sat or unknown model and verifies it against `spec`.
pub fn reconstruct(out: &SolverOutput, script: &SmtScript, spec: &TypedSpec) -> Result<Witness, ReconstructError> {
    let origin = match out.status {
        Status::Sat => Origin::SolverModel,
        Status::Unknown => Origin::SolverPotential,
        ref s => return Err(ReconstructError::NoModel(s.clone())),
    };
    let mut rb = Rebuild { script, aliases: BTreeMap::new(), used: BTreeSet::new() };
    // constants the script declares: their model values name them
    for (z, sym) in &script.symbols {
        if sym.kind == SymbolKind::Constant {
            rb.used.insert(z.clone());
            let atom = match out.bindings.get(&sym.emitted) {
                Some(GVal::Atom(a)) => a.clone(),
                _ => sym.emitted.clone(),
            };
            rb.aliases.entry(atom).or_insert_with(|| z.clone());
        }
    }
    let mut env = Env::new();
    for v in &spec.vars {
        let name = script.emitted(&v.name).ok_or_else(|| ReconstructError::MissingBinding(v.name.clone()))?;
        let g = out.bindings.get(name).ok_or_else(|| ReconstructError::MissingBinding(v.name.clone()))?;
        env.insert(v.name.clone(), rb.var(&v.name, &v.declared, g)?);
    }
    Ok(Witness::verify(spec, env, origin, Some(out.status.clone())))
}

#[cfg(test)]
mod tests;
