use std::collections::{BTreeMap, BTreeSet};

use super::term::*;
use super::{
    cvc3, yices, Dialect, EmitError, EmitErrorKind, ScriptUniverse, Sentence, SentenceKind, SmtScript, Symbol,
    SymbolKind,
};
use crate::zcore::{SynKind, TypeExpr};
use crate::ztype::{normalize, PredOp, TExpr, TKind, TypedSpec};

/// Names never used for emitted symbols in either dialect.
const RESERVED: &[&str] = &[
    "define", "define-type", "assert", "check", "lambda", "forall", "exists", "and", "or", "not", "true", "false",
    "select", "mk-tuple", "mk-record", "update", "ite", "if", "let", "int", "nat", "nat1", "bool", "real", "tuple",
    "record", "scalar", "subtype", "mod", "div", "dom", "law", "set", "bij", "card", "ARRAY", "OF", "TYPE",
    "DATATYPE", "END", "ASSERT", "FORALL", "EXISTS", "AND", "OR", "NOT", "XOR", "IF", "THEN", "ELSE", "ELSIF",
    "ENDIF", "TRUE", "FALSE", "INT", "NAT", "NAT1", "REAL", "BOOLEAN", "SUBTYPE", "LAMBDA", "CHECKSAT",
    "COUNTERMODEL", "QUERY", "BITVECTOR", "WITH", "LET", "IN",
];

/// Yices binder letters for multi-leaf elements; function coercions use `x, y, ..`.
const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const PAIR_LETTERS: &[u8] = b"xyzuvwabcdefghijklmnopqrst";

/// Number of constants a basic type gets in the variant embedding.
pub const VARIANT_SIZE: usize = 3;

fn escape(name: &str) -> String {
    let mut s = name.replace('?', "_q").replace('!', "_b");
    if RESERVED.contains(&s.as_str()) {
        s.push('_');
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SetOp {
    Cup,
    Cap,
    Minus,
}

pub(super) struct Emitter<'a> {
    spec: &'a TypedSpec,
    d: Dialect,
    variant: bool,
    symbols: BTreeMap<String, Symbol>,
    taken: BTreeSet<String>,
    aux: Vec<Sentence>,
    aux_names: Vec<String>,
    errors: Vec<EmitError>,
    pred: Option<usize>,
}

impl<'a> Emitter<'a> {
    pub fn new(spec: &'a TypedSpec, d: Dialect, variant: bool) -> Self {
        Emitter {
            spec,
            d,
            variant,
            symbols: BTreeMap::new(),
            taken: RESERVED.iter().map(|s| s.to_string()).collect(),
            aux: Vec::new(),
            aux_names: Vec::new(),
            errors: Vec::new(),
            pred: None,
        }
    }

    fn claim(&mut self, base: String) -> String {
        let mut name = base.clone();
        let mut k = 1;
        while self.taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        self.taken.insert(name.clone());
        name
    }

    fn add_symbol(&mut self, z: &str, kind: SymbolKind, sort: Sort) -> String {
        if let Some(s) = self.symbols.get(z) {
            return s.emitted.clone();
        }
        let emitted = self.claim(escape(z));
        self.symbols.insert(z.to_string(), Symbol { emitted: emitted.clone(), sort, kind });
        emitted
    }

    fn name(&self, z: &str) -> String {
        self.symbols[z].emitted.clone()
    }

    fn fail(&mut self, kind: EmitErrorKind) {
        self.errors.push(EmitError { pred: self.pred, kind });
    }

    // ---- sorts ----

    /// Leaf sorts of a normalized type, used for set elements and map indices.
    fn leaf_sorts(&self, t: &TypeExpr) -> Vec<Sort> {
        match t {
            TypeExpr::Product(l, r) => {
                let mut v = self.leaf_sorts(l);
                v.extend(self.leaf_sorts(r));
                v
            }
            TypeExpr::Int | TypeExpr::Nat => vec![Sort::Int],
            TypeExpr::Basic(b) | TypeExpr::Free { name: b, .. } => vec![Sort::Named(self.name(b))],
            TypeExpr::Power(e) => vec![Sort::set_of(self.leaf_sorts(e))],
            TypeExpr::Synonym(..) => self.leaf_sorts(&normalize(t)),
        }
    }

    fn leaf_count(t: &TypeExpr) -> usize {
        match t {
            TypeExpr::Product(l, r) => Self::leaf_count(l) + Self::leaf_count(r),
            _ => 1,
        }
    }

    /// Declared leaves, keeping ℕ, for bound checks.
    fn decl_leaves(t: &TypeExpr) -> Vec<&TypeExpr> {
        match t {
            TypeExpr::Product(l, r) => {
                let mut v = Self::decl_leaves(l);
                v.extend(Self::decl_leaves(r));
                v
            }
            _ => vec![t],
        }
    }

    /// Sort of a value of a declared type in a non-index position. `None` for nested records.
    fn value_sort(&self, t: &TypeExpr) -> Option<Sort> {
        Some(match t {
            TypeExpr::Int => Sort::Int,
            TypeExpr::Nat => Sort::Nat,
            TypeExpr::Basic(b) | TypeExpr::Free { name: b, .. } => Sort::Named(self.name(b)),
            TypeExpr::Product(..) => {
                Sort::Tuple(Self::decl_leaves(t).into_iter().map(|l| self.value_sort(l)).collect::<Option<_>>()?)
            }
            TypeExpr::Power(e) => {
                self.check_flat(e)?;
                Sort::set_of(self.leaf_sorts(e))
            }
            TypeExpr::Synonym(SynKind::Rel, args) => {
                self.check_flat(&args[0])?;
                self.check_flat(&args[1])?;
                Sort::set_of(self.leaf_sorts(&normalize(t).set_element().unwrap()))
            }
            TypeExpr::Synonym(..) => return None,
        })
    }

    fn check_flat(&self, t: &TypeExpr) -> Option<()> {
        self.value_sort(t).map(|_| ())
    }

    fn var_sort(&self, t: &TypeExpr) -> Option<Sort> {
        let nat1 = || Sort::Nat1;
        Some(match t {
            TypeExpr::Synonym(k @ (SynKind::Pfun | SynKind::Ffun), args) => {
                let lx = self.leaf_sorts(&normalize(&args[0]));
                self.check_flat(&args[0])?;
                let y = self.value_sort(&args[1])?;
                let mut fields = vec![("dom", Sort::set_of(lx.clone())), ("law", Sort::Map(lx.clone(), Box::new(y)))];
                if *k == SynKind::Ffun {
                    fields.push(("bij", Sort::Map(lx, Box::new(nat1()))));
                    fields.push(("card", Sort::Nat));
                }
                Sort::Record(fields)
            }
            TypeExpr::Synonym(SynKind::Fun, args) => {
                self.check_flat(&args[0])?;
                Sort::Map(self.leaf_sorts(&normalize(&args[0])), Box::new(self.value_sort(&args[1])?))
            }
            TypeExpr::Synonym(SynKind::Seq, args) => Sort::Record(vec![
                ("dom", Sort::set_of(vec![nat1()])),
                ("law", Sort::Map(vec![nat1()], Box::new(self.value_sort(&args[0])?))),
                ("card", Sort::Nat),
            ]),
            TypeExpr::Synonym(SynKind::Finset, args) => {
                self.check_flat(&args[0])?;
                let lx = self.leaf_sorts(&normalize(&args[0]));
                Sort::Record(vec![
                    ("set", Sort::set_of(lx.clone())),
                    ("bij", Sort::Map(lx, Box::new(nat1()))),
                    ("card", Sort::Nat),
                ])
            }
            _ => self.value_sort(t)?,
        })
    }

    fn mangle(&self, t: &TypeExpr) -> String {
        match t {
            TypeExpr::Int | TypeExpr::Nat => "INT".into(),
            TypeExpr::Basic(b) | TypeExpr::Free { name: b, .. } => self.name(b),
            TypeExpr::Product(l, r) => {
                let right = match **r {
                    TypeExpr::Product(..) => format!("_{}_", self.mangle(r)),
                    _ => self.mangle(r),
                };
                format!("{}x{right}", self.mangle(l))
            }
            TypeExpr::Power(e) => match **e {
                TypeExpr::Product(..) => format!("P_{}_", self.mangle(e)),
                _ => format!("P{}", self.mangle(e)),
            },
            TypeExpr::Synonym(..) => self.mangle(&normalize(t)),
        }
    }

    // ---- binders ----

    /// Binds an element with the given leaf sorts. Yices binds one variable per leaf
    /// (`single` alone, or letters from `offset` followed by `suffix`); CVC3 binds one
    /// tuple-sorted variable and projects.
    fn bind(&mut self, single: &str, suffix: &str, offset: usize, leaves: &[Sort]) -> (Params, Vec<Term>) {
        self.bind_with(LETTERS, single, suffix, offset, leaves)
    }

    fn bind_with(
        &mut self,
        letters: &[u8],
        single: &str,
        suffix: &str,
        offset: usize,
        leaves: &[Sort],
    ) -> (Params, Vec<Term>) {
        if leaves.len() == 1 || self.d == Dialect::Cvc3 {
            let name = self.fresh(single);
            let sort = if leaves.len() == 1 { leaves[0].clone() } else { Sort::Tuple(leaves.to_vec()) };
            let terms = if leaves.len() == 1 {
                vec![Term::Sym(name.clone())]
            } else {
                (0..leaves.len()).map(|i| proj(Term::Sym(name.clone()), i)).collect()
            };
            return (vec![(name, sort)], terms);
        }
        let mut params = Vec::new();
        let mut terms = Vec::new();
        for (i, s) in leaves.iter().enumerate() {
            let letter = letters[(offset + i) % letters.len()] as char;
            let name = self.fresh(&format!("{letter}{suffix}"));
            terms.push(Term::Sym(name.clone()));
            params.push((name, s.clone()));
        }
        (params, terms)
    }

    /// A bound-variable name that does not clash with any emitted symbol.
    fn fresh(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 1;
        while self.taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        name
    }

    /// Index arguments for a map read or membership test.
    fn idx(&self, leaves: Vec<Term>) -> Vec<Term> {
        match self.d {
            Dialect::Yices => leaves,
            Dialect::Cvc3 => vec![tuple(leaves)],
        }
    }

    fn nat_guard(decl_dom: &TypeExpr, leaves: &[Term]) -> Term {
        let guards = Self::decl_leaves(decl_dom)
            .into_iter()
            .zip(leaves)
            .filter(|(t, _)| **t == TypeExpr::Nat)
            .map(|(_, x)| cmp(Cmp::Ge, x.clone(), Term::Int(0)))
            .collect();
        and(guards)
    }

    // ---- auxiliary definitions ----

    fn print(&self, t: &Term) -> String {
        match self.d {
            Dialect::Yices => yices::term(t),
            Dialect::Cvc3 => cvc3::term(t),
        }
    }

    fn sort_text(&self, s: &Sort) -> String {
        self.d.sort(s)
    }

    fn push_aux(&mut self, text: String) {
        self.aux.push(Sentence { kind: SentenceKind::AuxDef, text });
    }

    /// Returns true the first time `name` is requested, reserving it.
    fn first_use(&mut self, name: &str) -> bool {
        if self.aux_names.iter().any(|n| n == name) {
            return false;
        }
        self.aux_names.push(name.to_string());
        self.taken.insert(name.to_string());
        true
    }

    fn define_const(&mut self, name: &str, sort: &Sort, value: &Term) {
        let text = match self.d {
            Dialect::Yices => format!("(define {name}::{} {})", self.sort_text(sort), self.print(value)),
            Dialect::Cvc3 => format!("{name} : {} = {};", self.sort_text(sort), self.print(value)),
        };
        self.push_aux(text);
    }

    /// An operator defined by `name(params) = body`.
    fn define_fun(&mut self, name: &str, params: Params, result: Sort, body: Term) {
        let fsort = Sort::Fun(params.iter().map(|(_, s)| s.clone()).collect(), Box::new(result.clone()));
        match self.d {
            Dialect::Yices => {
                let text = format!(
                    "(define {name}::{} (lambda {} {}))",
                    self.sort_text(&fsort),
                    yices::params(&params),
                    self.print(&body)
                );
                self.push_aux(text);
            }
            Dialect::Cvc3 => {
                self.push_aux(format!("{name} : {};", self.sort_text(&fsort)));
                let call = Term::Call(name.to_string(), params.iter().map(|(n, _)| Term::Sym(n.clone())).collect());
                let law = if result == Sort::Bool { iff(call, body) } else { eq(call, body) };
                let text = format!("ASSERT {};", self.print(&Term::Forall(params, Box::new(law))));
                self.push_aux(text);
            }
        }
    }

    fn aux_emptyset(&mut self, elem: &TypeExpr) -> String {
        let name = format!("emptyset{}", self.mangle(elem));
        if self.first_use(&name) {
            let ls = self.leaf_sorts(elem);
            let (ps, _) = self.bind("x", "", 0, &ls);
            let set = Term::SetLambda(ps, Box::new(Term::Bool(false)));
            self.define_const(&name, &Sort::set_of(ls), &set);
        }
        name
    }

    fn set_params(&mut self, names: &[&str], ls: &[Sort]) -> Params {
        names.iter().map(|n| (self.fresh(n), Sort::set_of(ls.to_vec()))).collect()
    }

    fn aux_setop(&mut self, op: SetOp, elem: &TypeExpr) -> String {
        let prefix = match op {
            SetOp::Cup => "cup",
            SetOp::Cap => "cap",
            SetOp::Minus => "setminus",
        };
        let name = format!("{prefix}{}", self.mangle(elem));
        if self.first_use(&name) {
            let ls = self.leaf_sorts(elem);
            let ps = self.set_params(&["A", "B"], &ls);
            let (xs, lt) = self.bind("x", "", 0, &ls);
            let ix = self.idx(lt);
            let a = member(Term::Sym(ps[0].0.clone()), ix.clone());
            let b = member(Term::Sym(ps[1].0.clone()), ix);
            let body = match op {
                SetOp::Cup => or(vec![a, b]),
                SetOp::Cap => and(vec![a, b]),
                SetOp::Minus => and(vec![a, not(b)]),
            };
            self.define_fun(&name, ps, Sort::set_of(ls), Term::SetLambda(xs, Box::new(body)));
        }
        name
    }

    fn aux_subseteq(&mut self, elem: &TypeExpr) -> String {
        let name = format!("subseteq{}", self.mangle(elem));
        if self.first_use(&name) {
            let ls = self.leaf_sorts(elem);
            let ps = self.set_params(&["A", "B"], &ls);
            let (xs, lt) = self.bind("x", "", 0, &ls);
            let ix = self.idx(lt);
            let body = implies(member(Term::Sym(ps[0].0.clone()), ix.clone()), member(Term::Sym(ps[1].0.clone()), ix));
            self.define_fun(&name, ps, Sort::Bool, Term::Forall(xs, Box::new(body)));
        }
        name
    }

    /// `dom` (first = true) or `ran` of a relation with element type `elem`.
    fn aux_projection(&mut self, first: bool, elem: &TypeExpr) -> String {
        let name = format!("{}{}", if first { "dom" } else { "ran" }, self.mangle(elem));
        if self.first_use(&name) {
            let TypeExpr::Product(l, r) = elem else { unreachable!("typecheck ensures relations") };
            let (lx, ly) = (self.leaf_sorts(l), self.leaf_sorts(r));
            let mut all = lx.clone();
            all.extend(ly.clone());
            let ps = self.set_params(&["R"], &all);
            let (xs, xt) = self.bind("x", "", 0, &lx);
            let (ys, yt) = self.bind("y", "", lx.len(), &ly);
            let mut leaves = xt;
            leaves.extend(yt);
            let inner = member(Term::Sym(ps[0].0.clone()), self.idx(leaves));
            let (outer, kept, result) = if first { (xs, ys, lx) } else { (ys, xs, ly) };
            let body = Term::SetLambda(outer, Box::new(Term::Exists(kept, Box::new(inner))));
            self.define_fun(&name, ps, Sort::set_of(result), body);
        }
        name
    }

    /// The set of pairs of a function-like variable (`fSet`).
    fn coercion(&mut self, var: &str) -> String {
        let emitted = self.name(var);
        let name = format!("{emitted}Set");
        if self.aux_names.contains(&name) {
            return name;
        }
        let declared = self.spec.var(var).unwrap().declared.clone();
        let TypeExpr::Synonym(kind, args) = &declared else { unreachable!() };
        let (dom_t, ran_t) = match kind {
            SynKind::Seq => (TypeExpr::Int, normalize(&args[0])),
            _ => (normalize(&args[0]), normalize(&args[1])),
        };
        let (lx, ly) = (self.leaf_sorts(&dom_t), self.leaf_sorts(&ran_t));
        let nx = lx.len();
        let mut all = lx;
        all.extend(ly);
        self.first_use(&name);
        let (ps, leaves) = self.bind_with(PAIR_LETTERS, "x", "", 0, &all);
        let (xs, ys) = leaves.split_at(nx);
        let f = Term::Sym(emitted);
        let (in_dom, law) = match kind {
            SynKind::Fun => (Self::nat_guard(&args[0], xs), f),
            _ => (member(field(f.clone(), "dom"), self.idx(xs.to_vec())), field(f, "law")),
        };
        let body = and(vec![in_dom, eq(read(law, self.idx(xs.to_vec())), tuple(ys.to_vec()))]);
        self.define_const(&name, &Sort::set_of(all), &Term::SetLambda(ps, Box::new(body)));
        name
    }

    // ---- expressions ----

    fn declared(&self, var: &str) -> &'a TypeExpr {
        &self.spec.var(var).unwrap().declared
    }

    fn elem(e: &TExpr) -> TypeExpr {
        match &e.ty {
            TypeExpr::Power(x) => (**x).clone(),
            other => unreachable!("set expected, found {other}"),
        }
    }

    fn leaves(&mut self, e: &TExpr) -> Vec<Term> {
        match (&e.ty, &e.kind) {
            (TypeExpr::Product(..), TKind::Tuple(a, b)) => {
                let mut v = self.leaves(a);
                v.extend(self.leaves(b));
                v
            }
            (TypeExpr::Product(..), _) => {
                let t = self.value(e);
                (0..Self::leaf_count(&e.ty)).map(|i| proj(t.clone(), i)).collect()
            }
            _ => vec![self.value(e)],
        }
    }

    fn index_of(&mut self, e: &TExpr) -> Vec<Term> {
        let l = self.leaves(e);
        self.idx(l)
    }

    fn set_term(&mut self, e: &TExpr) -> Term {
        let elem = Self::elem(e);
        match &e.kind {
            TKind::Var(v) => match self.declared(v) {
                TypeExpr::Synonym(SynKind::Finset, _) => field(Term::Sym(self.name(v)), "set"),
                TypeExpr::Synonym(SynKind::Pfun | SynKind::Ffun | SynKind::Fun | SynKind::Seq, _) => {
                    Term::Sym(self.coercion(v))
                }
                _ => Term::Sym(self.name(v)),
            },
            TKind::SetExt(items) => {
                let item_leaves: Vec<Vec<Term>> = items.iter().map(|i| self.leaves(i)).collect();
                let ls = self.leaf_sorts(&elem);
                let (ps, lt) = self.bind("x", "", 0, &ls);
                let alts = item_leaves
                    .into_iter()
                    .map(|il| and(lt.iter().cloned().zip(il).map(|(p, v)| eq(p, v)).collect()))
                    .collect();
                Term::SetLambda(ps, Box::new(or(alts)))
            }
            TKind::Range(a, b) => {
                let (a, b) = (self.value(a), self.value(b));
                let (ps, lt) = self.bind("i", "", 0, &[Sort::Int]);
                let i = lt[0].clone();
                Term::SetLambda(ps, Box::new(and(vec![cmp(Cmp::Le, a, i.clone()), cmp(Cmp::Le, i, b)])))
            }
            TKind::EmptySet => Term::Sym(self.aux_emptyset(&elem)),
            TKind::Dom(r) => {
                if let TKind::Var(v) = &r.kind {
                    let f = Term::Sym(self.name(v));
                    match self.declared(v) {
                        TypeExpr::Synonym(SynKind::Pfun | SynKind::Ffun, _) => return field(f, "dom"),
                        TypeExpr::Synonym(SynKind::Seq, _) => {
                            let (ps, lt) = self.bind("i", "", 0, &[Sort::Int]);
                            return Term::SetLambda(ps, Box::new(member(field(f, "dom"), lt)));
                        }
                        TypeExpr::Synonym(SynKind::Fun, args) => {
                            let ls = self.leaf_sorts(&elem);
                            let (ps, lt) = self.bind("x", "", 0, &ls);
                            return Term::SetLambda(ps, Box::new(Self::nat_guard(&args[0], &lt)));
                        }
                        _ => {}
                    }
                }
                let name = self.aux_projection(true, &Self::elem(r));
                Term::Call(name, vec![self.set_term(r)])
            }
            TKind::Ran(r) => {
                let name = self.aux_projection(false, &Self::elem(r));
                Term::Call(name, vec![self.set_term(r)])
            }
            TKind::Union(a, b) | TKind::Inter(a, b) | TKind::Diff(a, b) => {
                let op = match e.kind {
                    TKind::Union(..) => SetOp::Cup,
                    TKind::Inter(..) => SetOp::Cap,
                    _ => SetOp::Minus,
                };
                let name = self.aux_setop(op, &elem);
                Term::Call(name, vec![self.set_term(a), self.set_term(b)])
            }
            _ => self.scalar(e),
        }
    }

    fn value(&mut self, e: &TExpr) -> Term {
        if matches!(e.ty, TypeExpr::Power(_)) {
            self.set_term(e)
        } else {
            self.scalar(e)
        }
    }

    fn scalar(&mut self, e: &TExpr) -> Term {
        match &e.kind {
            TKind::Var(v) => Term::Sym(self.name(v)),
            TKind::Int(i) => Term::Int(*i),
            TKind::Enum { name, .. } => Term::Sym(self.name(name)),
            TKind::Basic { name, type_name } => {
                if self.variant {
                    let ok = (1..=VARIANT_SIZE).any(|i| *name == format!("{type_name}{i}"));
                    if !ok {
                        self.fail(EmitErrorKind::UnsupportedPredicate(format!(
                            "constant {name} outside the {VARIANT_SIZE}-element variant of {type_name}"
                        )));
                    }
                }
                Term::Sym(self.name(name))
            }
            TKind::Tuple(..) => {
                let l = self.leaves(e);
                tuple(l)
            }
            TKind::Apply { func, arg } => {
                let ix = self.index_of(arg);
                let f = Term::Sym(self.name(func));
                match self.declared(func) {
                    TypeExpr::Synonym(SynKind::Fun, _) => read(f, ix),
                    _ => read(field(f, "law"), ix),
                }
            }
            TKind::Card(s) => self.card(s),
            TKind::Add(a, b) | TKind::Sub(a, b) | TKind::Mul(a, b) => {
                let op = match e.kind {
                    TKind::Add(..) => Arith::Add,
                    TKind::Sub(..) => Arith::Sub,
                    _ => Arith::Mul,
                };
                let (a, b) = (self.value(a), self.value(b));
                arith(op, a, b)
            }
            TKind::SetExt(_) | TKind::Range(..) | TKind::EmptySet | TKind::Dom(_) | TKind::Ran(_) => {
                self.set_term(e)
            }
            TKind::Union(..) | TKind::Inter(..) | TKind::Diff(..) => self.set_term(e),
        }
    }

    fn card(&mut self, s: &TExpr) -> Term {
        match &s.kind {
            TKind::Var(v) => field(Term::Sym(self.name(v)), "card"),
            TKind::EmptySet => Term::Int(0),
            TKind::Range(a, b) => {
                let (a, b) = (self.value(a), self.value(b));
                let size = arith(Arith::Add, arith(Arith::Sub, b.clone(), a.clone()), Term::Int(1));
                ite(cmp(Cmp::Le, a, b), size, Term::Int(0))
            }
            TKind::SetExt(items) => {
                let ground = items.iter().all(is_literal);
                let distinct = items.iter().enumerate().all(|(i, x)| items[..i].iter().all(|y| y != x));
                if ground && distinct && (self.variant || !items.iter().any(has_basic)) {
                    return Term::Int(items.len() as i64);
                }
                let vals: Vec<Term> = items.iter().map(|i| self.value(i)).collect();
                let mut sum: Option<Term> = None;
                for (i, v) in vals.iter().enumerate() {
                    let fresh = and(vals[..i].iter().map(|w| not(eq(v.clone(), w.clone()))).collect());
                    let one = if fresh == Term::Bool(true) { Term::Int(1) } else { ite(fresh, Term::Int(1), Term::Int(0)) };
                    sum = Some(match sum {
                        None => one,
                        Some(acc) => arith(Arith::Add, acc, one),
                    });
                }
                sum.unwrap_or(Term::Int(0))
            }
            other => {
                self.fail(EmitErrorKind::UnsupportedPredicate(format!("cardinality of {other:?}")));
                Term::Int(0)
            }
        }
    }

    fn pred(&mut self, op: PredOp, lhs: &TExpr, rhs: &TExpr) -> Term {
        match op {
            PredOp::Member | PredOp::NotMember => {
                let set = self.set_term(rhs);
                let m = member(set, self.index_of(lhs));
                if op == PredOp::Member { m } else { not(m) }
            }
            PredOp::Eq | PredOp::Neq => {
                let t = eq(self.value(lhs), self.value(rhs));
                if op == PredOp::Eq { t } else { not(t) }
            }
            PredOp::Subset | PredOp::NotSubset => {
                let name = self.aux_subseteq(&Self::elem(lhs));
                let t = Term::Call(name, vec![self.set_term(lhs), self.set_term(rhs)]);
                if op == PredOp::Subset { t } else { not(t) }
            }
            PredOp::Lt | PredOp::Le | PredOp::Gt | PredOp::Ge => {
                let c = match op {
                    PredOp::Lt => Cmp::Lt,
                    PredOp::Le => Cmp::Le,
                    PredOp::Gt => Cmp::Gt,
                    _ => Cmp::Ge,
                };
                cmp(c, self.value(lhs), self.value(rhs))
            }
        }
    }

    // ---- carrier axioms ----

    fn finiteness(&mut self, v: &str, set_field: &'static str, elem: &TypeExpr) -> Vec<Term> {
        let a = Term::Sym(self.name(v));
        let ls = self.leaf_sorts(elem);
        let set = field(a.clone(), set_field);
        let bij = field(a.clone(), "bij");
        let card = field(a, "card");
        let (ps, lt) = self.bind("x", "", 0, &ls);
        let ix = self.idx(lt);
        let first = Term::Forall(
            ps,
            Box::new(iff(member(set.clone(), ix.clone()), cmp(Cmp::Le, read(bij.clone(), ix), card.clone()))),
        );
        let n = self.fresh("n");
        let (p1, l1) = self.bind("x1", "1", 0, &ls);
        let (p2, l2) = self.bind("x2", "2", 0, &ls);
        let (i1, i2) = (self.idx(l1.clone()), self.idx(l2.clone()));
        let nt = Term::Sym(n.clone());
        let hyp = and(vec![
            cmp(Cmp::Le, nt.clone(), card),
            member(set.clone(), i1.clone()),
            member(set, i2.clone()),
            eq(read(bij.clone(), i1), nt.clone()),
            eq(read(bij, i2), nt),
        ]);
        let mut params = vec![(n, Sort::Nat1)];
        params.extend(p1);
        params.extend(p2);
        let second = Term::Forall(params, Box::new(implies(hyp, eq(tuple(l1), tuple(l2)))));
        vec![first, second]
    }

    fn nonneg(&mut self, set: Term, decl_elem: &TypeExpr) -> Option<Term> {
        if !Self::decl_leaves(decl_elem).iter().any(|l| **l == TypeExpr::Nat) {
            return None;
        }
        let ls = self.leaf_sorts(&normalize(decl_elem));
        let (ps, lt) = self.bind("x", "", 0, &ls);
        let guard = Self::nat_guard(decl_elem, &lt);
        let ix = self.idx(lt);
        Some(Term::Forall(ps, Box::new(implies(member(set, ix), guard))))
    }

    fn carrier_axioms(&mut self, v: &str) -> Vec<Term> {
        let declared = self.declared(v).clone();
        let a = Term::Sym(self.name(v));
        let mut out = Vec::new();
        match &declared {
            TypeExpr::Power(e) => out.extend(self.nonneg(a, e)),
            TypeExpr::Synonym(SynKind::Rel, args) => {
                let elem = TypeExpr::product(args[0].clone(), args[1].clone());
                out.extend(self.nonneg(a, &elem));
            }
            TypeExpr::Synonym(k @ (SynKind::Pfun | SynKind::Ffun), args) => {
                out.extend(self.nonneg(field(a, "dom"), &args[0]));
                if *k == SynKind::Ffun {
                    out.extend(self.finiteness(v, "dom", &normalize(&args[0])));
                }
            }
            TypeExpr::Synonym(SynKind::Finset, args) => {
                out.extend(self.nonneg(field(a, "set"), &args[0]));
                out.extend(self.finiteness(v, "set", &normalize(&args[0])));
            }
            TypeExpr::Synonym(SynKind::Seq, _) => {
                let n = self.fresh("n");
                let nt = Term::Sym(n.clone());
                let body = iff(cmp(Cmp::Le, nt.clone(), field(a.clone(), "card")), member(field(a, "dom"), vec![nt]));
                out.push(Term::Forall(vec![(n, Sort::Nat1)], Box::new(body)));
            }
            _ => {}
        }
        out
    }

    // ---- assembly ----

    fn used_types(&self) -> BTreeSet<String> {
        fn walk(t: &TypeExpr, out: &mut BTreeSet<String>) {
            match t {
                TypeExpr::Basic(b) | TypeExpr::Free { name: b, .. } => {
                    out.insert(b.clone());
                }
                TypeExpr::Product(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                TypeExpr::Power(e) => walk(e, out),
                TypeExpr::Synonym(_, args) => args.iter().for_each(|a| walk(a, out)),
                TypeExpr::Int | TypeExpr::Nat => {}
            }
        }
        let mut out = BTreeSet::new();
        for v in &self.spec.vars {
            walk(&v.declared, &mut out);
        }
        for p in &self.spec.preds {
            for e in [&p.lhs, &p.rhs] {
                e.walk(&mut |x| walk(&x.ty, &mut out));
            }
        }
        out
    }

    fn mentioned_basic_constants(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        for p in &self.spec.preds {
            for e in [&p.lhs, &p.rhs] {
                e.walk(&mut |x| {
                    if let TKind::Basic { name, type_name } = &x.kind {
                        let entry = (type_name.clone(), name.clone());
                        if !out.contains(&entry) {
                            out.push(entry);
                        }
                    }
                });
            }
        }
        out
    }

    fn sentence(kind: SentenceKind, text: String) -> Sentence {
        Sentence { kind, text }
    }

    pub fn run(mut self) -> Result<SmtScript, Vec<EmitError>> {
        let spec = self.spec;
        let d = self.d;
        let used = self.used_types();
        let basics: Vec<String> = spec.types.basics.iter().filter(|b| used.contains(*b)).cloned().collect();
        let frees: Vec<(String, Vec<String>)> =
            spec.types.frees.iter().filter(|(n, _)| used.contains(n)).cloned().collect();

        // names: types, then constants, then variables
        for b in &basics {
            let e = escape(b);
            self.add_symbol(b, SymbolKind::Type, Sort::Named(e));
        }
        for (f, _) in &frees {
            let e = escape(f);
            self.add_symbol(f, SymbolKind::Type, Sort::Named(e));
        }
        let mut universe = ScriptUniverse::default();
        for (f, cs) in &frees {
            let sort = Sort::Named(self.name(f));
            for c in cs {
                self.add_symbol(c, SymbolKind::Constant, sort.clone());
            }
            universe.constants.push((f.clone(), cs.clone()));
        }
        let mentioned = self.mentioned_basic_constants();
        let mut basic_consts: Vec<(String, Vec<String>)> = Vec::new();
        for b in &basics {
            let cs: Vec<String> = if self.variant {
                (1..=VARIANT_SIZE).map(|i| format!("{b}{i}")).collect()
            } else {
                mentioned.iter().filter(|(t, _)| t == b).map(|(_, c)| c.clone()).collect()
            };
            let sort = Sort::Named(self.name(b));
            for c in &cs {
                self.add_symbol(c, SymbolKind::Constant, sort.clone());
            }
            universe.constants.push((b.clone(), cs.clone()));
            basic_consts.push((b.clone(), cs));
        }
        for (t, c) in &mentioned {
            // constants outside the variant's values still need a name for diagnostics
            if !self.symbols.contains_key(c) {
                let sort = Sort::Named(self.name(t));
                self.add_symbol(c, SymbolKind::Constant, sort);
            }
        }
        universe.ints = crate::fms::int_literals(spec);

        let mut var_decls = Vec::new();
        for v in &spec.vars {
            match self.var_sort(&v.declared) {
                Some(sort) => {
                    let e = self.add_symbol(&v.name, SymbolKind::Variable, sort.clone());
                    var_decls.push((e, sort));
                }
                None => {
                    self.fail(EmitErrorKind::UnsupportedType { var: v.name.clone(), ty: v.declared.to_string() });
                    self.add_symbol(&v.name, SymbolKind::Variable, Sort::Bool);
                }
            }
        }
        if !self.errors.is_empty() {
            return Err(self.errors);
        }

        let mut axioms = Vec::new();
        for (_, cs) in &basic_consts {
            if !self.variant && cs.len() > 1 {
                let mut ne = Vec::new();
                for i in 0..cs.len() {
                    for j in i + 1..cs.len() {
                        ne.push(not(eq(Term::Sym(self.name(&cs[i])), Term::Sym(self.name(&cs[j])))));
                    }
                }
                axioms.push(and(ne));
            }
        }
        for v in &spec.vars {
            let ax = self.carrier_axioms(&v.name);
            axioms.extend(ax);
        }

        let mut asserts = Vec::new();
        for (i, p) in spec.preds.iter().enumerate() {
            self.pred = Some(i);
            let t = self.pred(p.op, &p.lhs, &p.rhs);
            asserts.push((i, t));
        }
        self.pred = None;
        if !self.errors.is_empty() {
            return Err(self.errors);
        }

        // assemble
        let c = d.comment();
        let mut out = Vec::new();
        let header = vec![
            format!("{c} generated by ztc {}", env!("CARGO_PKG_VERSION")),
            format!("{c} spec: {}", spec.name()),
            format!("{c} dialect: {}, variant: {}", d.name(), self.variant),
        ];
        for h in header {
            out.push(Self::sentence(SentenceKind::Header, h));
        }
        for (t, cs) in &universe.constants {
            out.push(Self::sentence(SentenceKind::Header, format!("{c} universe {t}: {}", cs.join(" "))));
        }
        if !universe.ints.is_empty() {
            let ints: Vec<String> = universe.ints.iter().map(|i| i.to_string()).collect();
            out.push(Self::sentence(SentenceKind::Header, format!("{c} universe INT: {}", ints.join(" "))));
        }
        if d == Dialect::Yices {
            out.push(Self::sentence(SentenceKind::ModelRequest, "(set-evidence! true)".into()));
        }

        let all_sorts: Vec<&Sort> = var_decls.iter().map(|(_, s)| s).collect();
        let uses = |s: &Sort| all_sorts.iter().any(|x| x.uses(s));
        let (nat, nat1) = (uses(&Sort::Nat), uses(&Sort::Nat1));
        match d {
            Dialect::Yices => {
                if nat1 {
                    out.push(Self::sentence(SentenceKind::TypeDecl, "(define-type nat1 (subtype (n::nat) (> n 0)))".into()));
                }
            }
            Dialect::Cvc3 => {
                if nat {
                    out.push(Self::sentence(SentenceKind::TypeDecl, "NAT : TYPE = SUBTYPE(LAMBDA (x : INT) : 0 <= x);".into()));
                }
                if nat1 {
                    out.push(Self::sentence(SentenceKind::TypeDecl, "NAT1 : TYPE = SUBTYPE(LAMBDA (x : INT) : 0 < x);".into()));
                }
            }
        }
        for (b, cs) in &basic_consts {
            let n = self.name(b);
            let text = match (d, self.variant) {
                (Dialect::Yices, false) => format!("(define-type {n})"),
                (Dialect::Cvc3, false) => format!("{n} : TYPE;"),
                (Dialect::Yices, true) => {
                    let names: Vec<String> = cs.iter().map(|c| self.name(c)).collect();
                    format!("(define-type {n} (scalar {}))", names.join(" "))
                }
                (Dialect::Cvc3, true) => {
                    let names: Vec<String> = cs.iter().map(|c| self.name(c)).collect();
                    format!("DATATYPE {n} = {} END;", names.join(" | "))
                }
            };
            out.push(Self::sentence(SentenceKind::TypeDecl, text));
        }
        for (f, cs) in &frees {
            let n = self.name(f);
            let names: Vec<String> = cs.iter().map(|c| self.name(c)).collect();
            let text = match d {
                Dialect::Yices => format!("(define-type {n} (scalar {}))", names.join(" ")),
                Dialect::Cvc3 => format!("DATATYPE {n} = {} END;", names.join(" | ")),
            };
            out.push(Self::sentence(SentenceKind::TypeDecl, text));
        }
        if !self.variant {
            for (b, cs) in &basic_consts {
                let sort = Sort::Named(self.name(b));
                for cst in cs {
                    let text = match d {
                        Dialect::Yices => format!("(define {}::{})", self.name(cst), self.sort_text(&sort)),
                        Dialect::Cvc3 => format!("{} : {};", self.name(cst), self.sort_text(&sort)),
                    };
                    out.push(Self::sentence(SentenceKind::VarDecl, text));
                }
            }
        }
        for (n, s) in &var_decls {
            let text = match d {
                Dialect::Yices => format!("(define {n}::{})", self.sort_text(s)),
                Dialect::Cvc3 => format!("{n} : {};", self.sort_text(s)),
            };
            out.push(Self::sentence(SentenceKind::VarDecl, text));
        }
        out.append(&mut self.aux);
        let wrap = |t: String| match d {
            Dialect::Yices => format!("(assert {t})"),
            Dialect::Cvc3 => format!("ASSERT {t};"),
        };
        for a in &axioms {
            out.push(Self::sentence(SentenceKind::Axiom, wrap(self.print(a))));
        }
        for (i, t) in &asserts {
            out.push(Self::sentence(SentenceKind::Assert(*i), wrap(self.print(t))));
        }
        match d {
            Dialect::Yices => out.push(Self::sentence(SentenceKind::Check, "(check)".into())),
            Dialect::Cvc3 => {
                out.push(Self::sentence(SentenceKind::Check, "CHECKSAT;".into()));
                out.push(Self::sentence(SentenceKind::ModelRequest, "COUNTERMODEL;".into()));
            }
        }

        Ok(SmtScript {
            dialect: d,
            variant: self.variant,
            spec_name: spec.name().to_string(),
            sentences: out,
            symbols: self.symbols,
            aux: self.aux_names,
            universe,
        })
    }
}

fn is_literal(e: &TExpr) -> bool {
    match &e.kind {
        TKind::Int(_) | TKind::Enum { .. } | TKind::Basic { .. } => true,
        TKind::Tuple(a, b) => is_literal(a) && is_literal(b),
        _ => false,
    }
}

fn has_basic(e: &TExpr) -> bool {
    let mut found = false;
    e.walk(&mut |x| found |= matches!(x.kind, TKind::Basic { .. }));
    found
}
