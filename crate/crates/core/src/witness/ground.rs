//! Ground solver values and the translation of Z bindings into them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::smt_emit::{Dialect, SmtScript, SymbolKind};
use crate::zcore::{SynKind, TypeExpr, Value};
use crate::zeval::Env;
use crate::ztype::TypedSpec;

/// A ground value in solver terms. Map keys are flattened to product leaves, so the
/// same value serves both dialects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GVal {
    Int(i64),
    Bool(bool),
    /// Scalar/datatype constant or uninterpreted element, by emitted name.
    Atom(String),
    Tuple(Vec<GVal>),
    Record(BTreeMap<String, GVal>),
    /// Finite table; points not listed are unspecified.
    Map(BTreeMap<Vec<GVal>, GVal>),
}

impl GVal {
    /// Product leaves of an element value.
    pub fn leaves(&self) -> Vec<GVal> {
        match self {
            GVal::Tuple(items) => items.iter().flat_map(GVal::leaves).collect(),
            v => vec![v.clone()],
        }
    }

    pub fn field(&self, f: &str) -> Option<&GVal> {
        match self {
            GVal::Record(fs) => fs.get(f),
            _ => None,
        }
    }
}

impl fmt::Display for GVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GVal::Int(i) => write!(f, "{i}"),
            GVal::Bool(b) => write!(f, "{b}"),
            GVal::Atom(a) => f.write_str(a),
            GVal::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            GVal::Record(fs) => {
                let parts: Vec<String> = fs.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                write!(f, "[# {} #]", parts.join(", "))
            }
            GVal::Map(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(k, v)| {
                        let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                        format!("{} -> {v}", ks.join(" "))
                    })
                    .collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// A Z binding in solver terms, with the finite universe it lives in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GEnv {
    /// Emitted symbol → value.
    pub vals: BTreeMap<String, GVal>,
    /// Emitted sort name → atoms of that sort.
    pub atoms: BTreeMap<String, BTreeSet<String>>,
    pub ints: BTreeSet<i64>,
}

struct Tr<'a> {
    script: &'a SmtScript,
    atoms: BTreeMap<String, BTreeSet<String>>,
    ints: BTreeSet<i64>,
}

impl Tr<'_> {
    fn sort_name(&self, ty: &str) -> String {
        self.script.emitted(ty).unwrap_or(ty).to_string()
    }

    fn atom(&mut self, ty: &str, name: &str) -> GVal {
        let a = self.script.emitted(name).unwrap_or(name).to_string();
        self.atoms.entry(self.sort_name(ty)).or_default().insert(a.clone());
        GVal::Atom(a)
    }

    fn int(&mut self, i: i64) -> GVal {
        self.ints.insert(i);
        GVal::Int(i)
    }

    /// Leaves of an element value.
    fn leaves(&mut self, v: &Value) -> Vec<GVal> {
        match v {
            Value::Tuple(a, b) => {
                let mut l = self.leaves(a);
                l.extend(self.leaves(b));
                l
            }
            v => vec![self.scalar(v)],
        }
    }

    fn element(&mut self, v: &Value) -> GVal {
        let mut l = self.leaves(v);
        if l.len() == 1 {
            l.pop().unwrap()
        } else {
            GVal::Tuple(l)
        }
    }

    fn scalar(&mut self, v: &Value) -> GVal {
        match v {
            Value::Int(i) => self.int(*i),
            Value::Enum { ty, name, .. } | Value::Basic { ty, name } => self.atom(ty, name),
            Value::Tuple(..) => self.element(v),
            Value::Set(s) => {
                let m = s.iter().map(|x| (self.leaves(x), GVal::Bool(true))).collect();
                GVal::Map(m)
            }
        }
    }

    fn pairs<'v>(&mut self, v: &'v Value) -> Vec<(&'v Value, &'v Value)> {
        v.as_set().into_iter().flatten().filter_map(Value::as_pair).collect()
    }

    fn finite(&mut self, keys: Vec<Vec<GVal>>, fields: &mut BTreeMap<String, GVal>, set_field: &str) {
        let n = keys.len() as i64;
        let bij = keys.iter().enumerate().map(|(i, k)| (k.clone(), self.int(i as i64 + 1))).collect();
        fields.insert(set_field.into(), GVal::Map(keys.into_iter().map(|k| (k, GVal::Bool(true))).collect()));
        fields.insert("bij".into(), GVal::Map(bij));
        // bij outside the set must exceed card; the interpreter reads it there
        self.int(n + 1);
        fields.insert("card".into(), self.int(n));
    }

    fn var(&mut self, declared: &TypeExpr, v: &Value) -> GVal {
        match declared {
            TypeExpr::Synonym(k @ (SynKind::Pfun | SynKind::Ffun | SynKind::Seq), _) => {
                let mut dom = BTreeMap::new();
                let mut law = BTreeMap::new();
                let mut keys = Vec::new();
                for (x, y) in self.pairs(v) {
                    let kx = self.leaves(x);
                    dom.insert(kx.clone(), GVal::Bool(true));
                    law.insert(kx.clone(), self.element(y));
                    keys.push(kx);
                }
                let mut fields = BTreeMap::new();
                fields.insert("law".to_string(), GVal::Map(law));
                match k {
                    SynKind::Ffun => self.finite(keys, &mut fields, "dom"),
                    SynKind::Seq => {
                        fields.insert("dom".into(), GVal::Map(dom));
                        let n = keys.len() as i64;
                        fields.insert("card".into(), self.int(n));
                    }
                    _ => {
                        fields.insert("dom".into(), GVal::Map(dom));
                    }
                }
                GVal::Record(fields)
            }
            TypeExpr::Synonym(SynKind::Fun, _) => {
                let mut m = BTreeMap::new();
                for (x, y) in self.pairs(v) {
                    let kx = self.leaves(x);
                    m.insert(kx, self.element(y));
                }
                GVal::Map(m)
            }
            TypeExpr::Synonym(SynKind::Finset, _) => {
                let keys: Vec<Vec<GVal>> =
                    v.as_set().into_iter().flatten().map(|x| self.leaves(x)).collect();
                let mut fields = BTreeMap::new();
                self.finite(keys, &mut fields, "set");
                GVal::Record(fields)
            }
            _ => self.element(v),
        }
    }
}

/// Translates a Z binding into the emitted symbols of `script`. Variables missing from
/// `env` are left unbound.
pub fn translate_env(spec: &TypedSpec, script: &SmtScript, env: &Env) -> GEnv {
    let mut tr = Tr { script, atoms: BTreeMap::new(), ints: script.universe.ints.iter().copied().collect() };
    tr.ints.insert(0);
    let mut vals = BTreeMap::new();
    for (ty, consts) in &script.universe.constants {
        for c in consts {
            let a = tr.atom(ty, c);
            if script.symbols.get(c).map(|s| s.kind) == Some(SymbolKind::Constant) {
                vals.insert(script.emitted(c).unwrap().to_string(), a);
            }
        }
    }
    for v in &spec.vars {
        let Some(value) = env.get(&v.name) else { continue };
        let g = tr.var(&v.declared, value);
        if let Some(name) = script.emitted(&v.name) {
            vals.insert(name.to_string(), g);
        }
    }
    GEnv { vals, atoms: tr.atoms, ints: tr.ints }
}

/// Solver status words.
pub(super) fn status_word(d: Dialect, status: &super::Status) -> &'static str {
    use super::Status::*;
    match (d, status) {
        (Dialect::Yices, Sat) => "sat",
        (Dialect::Yices, Unknown) => "unknown",
        (Dialect::Yices, _) => "unsat",
        (Dialect::Cvc3, Sat) => "Satisfiable.",
        (Dialect::Cvc3, Unknown) => "Unknown.",
        (Dialect::Cvc3, _) => "Unsatisfiable.",
    }
}

fn yices_value(v: &GVal) -> String {
    match v {
        GVal::Int(i) => i.to_string(),
        GVal::Bool(b) => b.to_string(),
        GVal::Atom(a) => a.clone(),
        GVal::Tuple(items) => {
            let parts: Vec<String> = items.iter().map(yices_value).collect();
            format!("(mk-tuple {})", parts.join(" "))
        }
        GVal::Record(_) | GVal::Map(_) => unreachable!("models list maps point by point"),
    }
}

fn cvc3_value(v: &GVal) -> String {
    match v {
        GVal::Int(i) => i.to_string(),
        GVal::Bool(b) => if *b { "0bin1" } else { "0bin0" }.to_string(),
        GVal::Atom(a) => a.clone(),
        GVal::Tuple(items) => {
            let parts: Vec<String> = items.iter().map(cvc3_value).collect();
            format!("({})", parts.join(", "))
        }
        GVal::Record(_) | GVal::Map(_) => unreachable!("models list maps point by point"),
    }
}

/// Writes `genv` as a model in the dialect's output shape: one line per scalar, record
/// field or true/defined map point. Yices flattens record fields as `<var>_<field>`.
pub fn synthesize_model(script: &SmtScript, genv: &GEnv, status: &super::Status) -> String {
    let d = script.dialect;
    let mut out = vec![status_word(d, status).to_string()];
    let mut line = |loc: String, args: &[GVal], v: &GVal| {
        let text = match d {
            Dialect::Yices => {
                let lhs = if args.is_empty() {
                    loc
                } else {
                    let a: Vec<String> = args.iter().map(yices_value).collect();
                    format!("({loc} {})", a.join(" "))
                };
                format!("(= {lhs} {})", yices_value(v))
            }
            Dialect::Cvc3 => {
                let lhs = match args {
                    [] => loc,
                    [one] => format!("{loc}[{}]", cvc3_value(one)),
                    many => format!("{loc}[{}]", cvc3_value(&GVal::Tuple(many.to_vec()))),
                };
                format!("ASSERT ({lhs} = {});", cvc3_value(v))
            }
        };
        out.push(text);
    };
    let sep = match d {
        Dialect::Yices => "_",
        Dialect::Cvc3 => ".",
    };
    let emit = |loc: String, v: &GVal, line: &mut dyn FnMut(String, &[GVal], &GVal)| match v {
        GVal::Map(m) => {
            for (k, x) in m {
                line(loc.clone(), k, x);
            }
        }
        v => line(loc, &[], v),
    };
    for (name, v) in &genv.vals {
        match v {
            // enum constants denote themselves
            GVal::Atom(a) if a == name => {}
            GVal::Record(fs) => {
                for (f, x) in fs {
                    emit(format!("{name}{sep}{f}"), x, &mut line);
                }
            }
            v => emit(name.clone(), v, &mut line),
        }
    }
    let mut text = out.join("\n");
    text.push('\n');
    text
}
