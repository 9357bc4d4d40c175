//! Ground evaluation of emitted scripts over a finite universe.

use std::collections::BTreeMap;
use std::rc::Rc;

use thiserror::Error;

use super::ground::{GEnv, GVal};
use super::reader::{self, Ast, ReadError, Stmt};
use crate::smt_emit::term::{Arith, Cmp};
use crate::smt_emit::{Dialect, SentenceKind, SmtScript, Sort, SymbolKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("cannot read sentence `{text}`: {err}")]
    Read { text: String, err: ReadError },
    #[error("`{0}` is not defined at this point")]
    Undefined(String),
    #[error("cannot quantify over {0:?}")]
    Unenumerable(Sort),
    #[error("ill-sorted term: {0}")]
    Sort(String),
    #[error("arithmetic overflow")]
    Overflow,
}

type R<T> = Result<T, InterpError>;

#[derive(Clone)]
enum IVal {
    Int(i64),
    Bool(bool),
    Atom(String),
    Tuple(Vec<IVal>),
    Record(BTreeMap<String, IVal>),
    Fun(Rc<Func>),
}

enum Func {
    Table { name: String, dom: Vec<Sort>, entries: BTreeMap<Vec<GVal>, IVal>, default: Option<IVal> },
    Closure { params: Vec<(String, Sort)>, body: Ast, captured: Vec<(String, IVal)> },
}

impl Func {
    /// Leaf sorts of the arguments.
    fn dom(&self) -> Vec<Sort> {
        match self {
            Func::Table { dom, .. } => dom.clone(),
            Func::Closure { params, .. } => params.iter().flat_map(|(_, s)| leaf_sorts(s)).collect(),
        }
    }
}

fn leaf_sorts(s: &Sort) -> Vec<Sort> {
    match s {
        Sort::Tuple(items) => items.iter().flat_map(leaf_sorts).collect(),
        s => vec![s.clone()],
    }
}

fn flatten(v: &IVal, out: &mut Vec<IVal>) {
    match v {
        IVal::Tuple(items) => items.iter().for_each(|i| flatten(i, out)),
        v => out.push(v.clone()),
    }
}

fn ground(v: &IVal) -> R<GVal> {
    Ok(match v {
        IVal::Int(i) => GVal::Int(*i),
        IVal::Bool(b) => GVal::Bool(*b),
        IVal::Atom(a) => GVal::Atom(a.clone()),
        IVal::Tuple(items) => GVal::Tuple(items.iter().map(ground).collect::<R<_>>()?),
        _ => return Err(InterpError::Sort("map or record used as an index".into())),
    })
}

fn as_bool(v: IVal) -> R<bool> {
    match v {
        IVal::Bool(b) => Ok(b),
        _ => Err(InterpError::Sort("expected a boolean".into())),
    }
}

fn as_int(v: IVal) -> R<i64> {
    match v {
        IVal::Int(i) => Ok(i),
        _ => Err(InterpError::Sort("expected an integer".into())),
    }
}

struct Interp<'a> {
    genv: &'a GEnv,
    globals: BTreeMap<String, IVal>,
    /// CVC3 operators declared but not yet defined.
    pending: BTreeMap<String, Sort>,
}

impl Interp<'_> {
    fn universe(&self, s: &Sort) -> R<Vec<IVal>> {
        let ints = || self.genv.ints.iter().copied();
        Ok(match s {
            Sort::Int => ints().map(IVal::Int).collect(),
            Sort::Nat => ints().filter(|i| *i >= 0).map(IVal::Int).collect(),
            Sort::Nat1 => ints().filter(|i| *i >= 1).map(IVal::Int).collect(),
            Sort::Bool => vec![IVal::Bool(false), IVal::Bool(true)],
            Sort::Named(n) => {
                self.genv.atoms.get(n).into_iter().flatten().map(|a| IVal::Atom(a.clone())).collect()
            }
            Sort::Tuple(items) => {
                let mut acc: Vec<Vec<IVal>> = vec![Vec::new()];
                for it in items {
                    let u = self.universe(it)?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            u.iter().map(move |x| {
                                let mut p = prefix.clone();
                                p.push(x.clone());
                                p
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(IVal::Tuple).collect()
            }
            other => return Err(InterpError::Unenumerable(other.clone())),
        })
    }

    fn import(&self, name: &str, v: &GVal, sort: &Sort) -> R<IVal> {
        Ok(match (v, sort) {
            (GVal::Record(fs), Sort::Record(sorts)) => {
                let mut out = BTreeMap::new();
                for (f, s) in sorts {
                    let g = fs.get(*f).ok_or_else(|| InterpError::UnboundSymbol(format!("{name}.{f}")))?;
                    out.insert(f.to_string(), self.import(&format!("{name}.{f}"), g, s)?);
                }
                IVal::Record(out)
            }
            (GVal::Map(m), Sort::Map(args, res)) => {
                let dom: Vec<Sort> = args.iter().flat_map(leaf_sorts).collect();
                let entries = m
                    .iter()
                    .map(|(k, x)| Ok((k.clone(), self.import(name, x, res)?)))
                    .collect::<R<BTreeMap<_, _>>>()?;
                let default = match **res {
                    Sort::Bool => Some(IVal::Bool(false)),
                    _ => match name.rsplit('.').next() {
                        // a finite set's bij is only constrained below card; anything larger fits
                        Some("bij") => {
                            let max = m.values().filter_map(|x| if let GVal::Int(i) = x { Some(*i) } else { None });
                            Some(IVal::Int(max.max().unwrap_or(0) + 1))
                        }
                        // outside dom the solver may pick any law value; take the first one
                        Some("law") => self.universe(res)?.into_iter().next(),
                        _ => None,
                    },
                };
                IVal::Fun(Rc::new(Func::Table { name: name.to_string(), dom, entries, default }))
            }
            (GVal::Int(i), _) => IVal::Int(*i),
            (GVal::Bool(b), _) => IVal::Bool(*b),
            (GVal::Atom(a), _) => IVal::Atom(a.clone()),
            (GVal::Tuple(items), Sort::Tuple(sorts)) if items.len() == sorts.len() => IVal::Tuple(
                items.iter().zip(sorts).map(|(x, s)| self.import(name, x, s)).collect::<R<_>>()?,
            ),
            (g, s) => return Err(InterpError::Sort(format!("value {g} does not fit {s:?} for `{name}`"))),
        })
    }

    fn lookup(&self, name: &str, locals: &[(String, IVal)]) -> R<IVal> {
        if let Some((_, v)) = locals.iter().rev().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        self.globals.get(name).cloned().ok_or_else(|| InterpError::UnboundSymbol(name.to_string()))
    }

    fn apply(&self, f: &IVal, args: Vec<IVal>) -> R<IVal> {
        let IVal::Fun(f) = f else { return Err(InterpError::Sort("application of a non-function".into())) };
        match &**f {
            Func::Table { name, entries, default, .. } => {
                let mut leaves = Vec::new();
                args.iter().for_each(|a| flatten(a, &mut leaves));
                let key = leaves.iter().map(ground).collect::<R<Vec<_>>>()?;
                match entries.get(&key).or(default.as_ref()) {
                    Some(v) => Ok(v.clone()),
                    None => {
                        let k: Vec<String> = key.iter().map(|k| k.to_string()).collect();
                        Err(InterpError::Undefined(format!("{name}({})", k.join(", "))))
                    }
                }
            }
            Func::Closure { params, body, captured } => {
                let mut locals = captured.clone();
                if params.len() == args.len() {
                    locals.extend(params.iter().map(|(n, _)| n.clone()).zip(args));
                } else {
                    // a tuple parameter meeting leaf arguments, or the other way round
                    let mut leaves = Vec::new();
                    args.iter().for_each(|a| flatten(a, &mut leaves));
                    let mut it = leaves.into_iter();
                    for (n, s) in params {
                        let k = leaf_sorts(s).len();
                        let part: Vec<IVal> = it.by_ref().take(k).collect();
                        let v = if k == 1 && part.len() == 1 { part[0].clone() } else { IVal::Tuple(part) };
                        locals.push((n.clone(), v));
                    }
                }
                self.eval(body, &locals)
            }
        }
    }

    fn equal(&self, a: &IVal, b: &IVal) -> R<bool> {
        Ok(match (a, b) {
            (IVal::Int(x), IVal::Int(y)) => x == y,
            (IVal::Bool(x), IVal::Bool(y)) => x == y,
            (IVal::Atom(x), IVal::Atom(y)) => x == y,
            (IVal::Tuple(x), IVal::Tuple(y)) if x.len() == y.len() => {
                for (p, q) in x.iter().zip(y) {
                    if !self.equal(p, q)? {
                        return Ok(false);
                    }
                }
                true
            }
            (IVal::Record(x), IVal::Record(y)) => {
                for (k, p) in x {
                    let q = y.get(k).ok_or_else(|| InterpError::Sort(format!("missing field {k}")))?;
                    if !self.equal(p, q)? {
                        return Ok(false);
                    }
                }
                true
            }
            (IVal::Fun(f), IVal::Fun(_)) => {
                // extensional over the finite universe
                let points = self.universe(&Sort::Tuple(f.dom()))?;
                for p in points {
                    let IVal::Tuple(args) = p else { unreachable!() };
                    if !self.equal(&self.apply(a, args.clone())?, &self.apply(b, args)?)? {
                        return Ok(false);
                    }
                }
                true
            }
            _ => return Err(InterpError::Sort("comparison of values of different sorts".into())),
        })
    }

    fn quantify(&self, params: &[(String, Sort)], body: &Ast, locals: &[(String, IVal)], forall: bool) -> R<bool> {
        let sorts: Vec<Sort> = params.iter().map(|(_, s)| s.clone()).collect();
        for point in self.universe(&Sort::Tuple(sorts))? {
            let IVal::Tuple(vals) = point else { unreachable!() };
            let mut inner = locals.to_vec();
            inner.extend(params.iter().map(|(n, _)| n.clone()).zip(vals));
            if as_bool(self.eval(body, &inner)?)? != forall {
                return Ok(!forall);
            }
        }
        Ok(forall)
    }

    fn eval(&self, t: &Ast, locals: &[(String, IVal)]) -> R<IVal> {
        let b = |x: &Ast| -> R<bool> { as_bool(self.eval(x, locals)?) };
        let i = |x: &Ast| -> R<i64> { as_int(self.eval(x, locals)?) };
        Ok(match t {
            Ast::Sym(s) => self.lookup(s, locals)?,
            Ast::Int(n) => IVal::Int(*n),
            Ast::Bool(v) => IVal::Bool(*v),
            Ast::Field(r, f) => match self.eval(r, locals)? {
                IVal::Record(fs) => fs.get(f).cloned().ok_or_else(|| InterpError::Sort(format!("no field {f}")))?,
                _ => return Err(InterpError::Sort(format!("field {f} of a non-record"))),
            },
            Ast::Proj(x, k) => match self.eval(x, locals)? {
                IVal::Tuple(items) => {
                    items.get(*k).cloned().ok_or_else(|| InterpError::Sort(format!("no component {k}")))?
                }
                _ => return Err(InterpError::Sort("projection of a non-tuple".into())),
            },
            Ast::App(f, args) => {
                let f = self.eval(f, locals)?;
                let args = args.iter().map(|a| self.eval(a, locals)).collect::<R<Vec<_>>>()?;
                self.apply(&f, args)?
            }
            Ast::Tuple(items) => IVal::Tuple(items.iter().map(|x| self.eval(x, locals)).collect::<R<_>>()?),
            Ast::Lambda(params, body) => IVal::Fun(Rc::new(Func::Closure {
                params: params.clone(),
                body: (**body).clone(),
                captured: locals.to_vec(),
            })),
            Ast::Not(x) => IVal::Bool(!b(x)?),
            Ast::And(xs) => {
                for x in xs {
                    if !b(x)? {
                        return Ok(IVal::Bool(false));
                    }
                }
                IVal::Bool(true)
            }
            Ast::Or(xs) => {
                for x in xs {
                    if b(x)? {
                        return Ok(IVal::Bool(true));
                    }
                }
                IVal::Bool(false)
            }
            Ast::Implies(p, q) => IVal::Bool(!b(p)? || b(q)?),
            Ast::Iff(p, q) => IVal::Bool(b(p)? == b(q)?),
            Ast::Eq(p, q) => IVal::Bool(self.equal(&self.eval(p, locals)?, &self.eval(q, locals)?)?),
            Ast::Cmp(c, p, q) => {
                let (x, y) = (i(p)?, i(q)?);
                IVal::Bool(match c {
                    Cmp::Lt => x < y,
                    Cmp::Le => x <= y,
                    Cmp::Gt => x > y,
                    Cmp::Ge => x >= y,
                })
            }
            Ast::Arith(op, p, q) => {
                let (x, y) = (i(p)?, i(q)?);
                let r = match op {
                    Arith::Add => x.checked_add(y),
                    Arith::Sub => x.checked_sub(y),
                    Arith::Mul => x.checked_mul(y),
                };
                IVal::Int(r.ok_or(InterpError::Overflow)?)
            }
            Ast::Neg(x) => IVal::Int(i(x)?.checked_neg().ok_or(InterpError::Overflow)?),
            Ast::Ite(c, p, q) => {
                if b(c)? {
                    self.eval(p, locals)?
                } else {
                    self.eval(q, locals)?
                }
            }
            Ast::Forall(ps, body) => IVal::Bool(self.quantify(ps, body, locals, true)?),
            Ast::Exists(ps, body) => IVal::Bool(self.quantify(ps, body, locals, false)?),
        })
    }

    /// `FORALL (ps) : f(ps) = body` (or `<=>`) for a pending operator `f`, as a definition.
    fn definition(&self, t: &Ast) -> Option<(String, Func)> {
        let Ast::Forall(ps, law) = t else { return None };
        let (Ast::Eq(lhs, body) | Ast::Iff(lhs, body)) = &**law else { return None };
        let Ast::App(f, args) = &**lhs else { return None };
        let Ast::Sym(name) = &**f else { return None };
        let same = args.len() == ps.len() && args.iter().zip(ps).all(|(a, (p, _))| *a == Ast::Sym(p.clone()));
        if !self.pending.contains_key(name) || !same {
            return None;
        }
        Some((name.clone(), Func::Closure { params: ps.clone(), body: (**body).clone(), captured: Vec::new() }))
    }
}

fn read(d: Dialect, text: &str) -> R<Stmt> {
    match d {
        Dialect::Yices => reader::yices_command(text),
        Dialect::Cvc3 => reader::cvc3_stmt(text),
    }
    .map_err(|err| InterpError::Read { text: text.to_string(), err })
}

/// Evaluates every axiom and assert of `script` under `genv`, in script order.
/// Quantifiers range over the finite universe recorded in `genv`.
pub fn interpret_script(script: &SmtScript, genv: &GEnv) -> Result<Vec<(SentenceKind, bool)>, InterpError> {
    let mut it = Interp { genv, globals: BTreeMap::new(), pending: BTreeMap::new() };
    for sym in script.symbols.values().filter(|s| s.kind == SymbolKind::Constant) {
        it.globals.insert(sym.emitted.clone(), IVal::Atom(sym.emitted.clone()));
    }
    let mut out = Vec::new();
    for sentence in &script.sentences {
        if sentence.kind == SentenceKind::Header {
            continue;
        }
        match read(script.dialect, &sentence.text)? {
            Stmt::DefineType(_, consts) => {
                for c in consts {
                    it.globals.insert(c.clone(), IVal::Atom(c));
                }
            }
            Stmt::Declare(name, sort @ Sort::Fun(..)) => {
                it.pending.insert(name, sort);
            }
            Stmt::Declare(name, sort) => {
                let v = match genv.vals.get(&name) {
                    Some(g) => it.import(&name, g, &sort)?,
                    None => it.globals.get(&name).cloned().ok_or(InterpError::UnboundSymbol(name.clone()))?,
                };
                it.globals.insert(name, v);
            }
            Stmt::Define(name, _, body) => {
                let v = it.eval(&body, &[])?;
                it.globals.insert(name, v);
            }
            Stmt::Assert(t) => {
                if sentence.kind == SentenceKind::AuxDef {
                    if let Some((name, f)) = it.definition(&t) {
                        it.pending.remove(&name);
                        it.globals.insert(name, IVal::Fun(Rc::new(f)));
                        continue;
                    }
                }
                out.push((sentence.kind, as_bool(it.eval(&t, &[])?)?));
            }
            Stmt::Command(_) => {}
        }
    }
    Ok(out)
}
