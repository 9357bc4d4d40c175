//! Dialect-neutral solver terms and sorts.

/// Solver sorts. Products are flat: `A x B x C` is one three-component tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Int,
    Nat,
    Nat1,
    Bool,
    Named(String),
    Tuple(Vec<Sort>),
    /// Characteristic map / array; a set when the result is `Bool`.
    Map(Vec<Sort>, Box<Sort>),
    Record(Vec<(&'static str, Sort)>),
    /// Type of an auxiliary operator.
    Fun(Vec<Sort>, Box<Sort>),
}

impl Sort {
    pub fn set_of(args: Vec<Sort>) -> Sort {
        Sort::Map(args, Box::new(Sort::Bool))
    }

    pub fn uses(&self, s: &Sort) -> bool {
        if self == s {
            return true;
        }
        match self {
            Sort::Tuple(xs) => xs.iter().any(|x| x.uses(s)),
            Sort::Map(xs, r) | Sort::Fun(xs, r) => xs.iter().any(|x| x.uses(s)) || r.uses(s),
            Sort::Record(fs) => fs.iter().any(|(_, x)| x.uses(s)),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arith {
    Add,
    Sub,
    Mul,
}

pub type Params = Vec<(String, Sort)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Sym(String),
    Int(i64),
    Bool(bool),
    Field(Box<Term>, &'static str),
    /// Value of a map at an index (function application / array read).
    Read(Box<Term>, Vec<Term>),
    /// Membership in a characteristic map.
    Member(Box<Term>, Vec<Term>),
    /// Auxiliary operator call.
    Call(String, Vec<Term>),
    Tuple(Vec<Term>),
    /// Zero-based tuple projection.
    Proj(Box<Term>, usize),
    /// The set `{ params | body }`.
    SetLambda(Params, Box<Term>),
    Not(Box<Term>),
    And(Vec<Term>),
    Or(Vec<Term>),
    Implies(Box<Term>, Box<Term>),
    Iff(Box<Term>, Box<Term>),
    Eq(Box<Term>, Box<Term>),
    Cmp(Cmp, Box<Term>, Box<Term>),
    Arith(Arith, Box<Term>, Box<Term>),
    Ite(Box<Term>, Box<Term>, Box<Term>),
    Forall(Params, Box<Term>),
    Exists(Params, Box<Term>),
}

pub fn sym(s: &str) -> Term {
    Term::Sym(s.to_string())
}

pub fn field(t: Term, f: &'static str) -> Term {
    Term::Field(Box::new(t), f)
}

pub fn read(m: Term, args: Vec<Term>) -> Term {
    Term::Read(Box::new(m), args)
}

pub fn eq(a: Term, b: Term) -> Term {
    Term::Eq(Box::new(a), Box::new(b))
}

pub fn not(a: Term) -> Term {
    match a {
        Term::Bool(b) => Term::Bool(!b),
        a => Term::Not(Box::new(a)),
    }
}

pub fn cmp(op: Cmp, a: Term, b: Term) -> Term {
    Term::Cmp(op, Box::new(a), Box::new(b))
}

pub fn arith(op: Arith, a: Term, b: Term) -> Term {
    Term::Arith(op, Box::new(a), Box::new(b))
}

pub fn implies(a: Term, b: Term) -> Term {
    Term::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Term, b: Term) -> Term {
    Term::Iff(Box::new(a), Box::new(b))
}

pub fn ite(c: Term, a: Term, b: Term) -> Term {
    Term::Ite(Box::new(c), Box::new(a), Box::new(b))
}

/// Conjunction with `true` operands dropped.
pub fn and(items: Vec<Term>) -> Term {
    let mut items: Vec<Term> = items.into_iter().filter(|t| *t != Term::Bool(true)).collect();
    match items.len() {
        0 => Term::Bool(true),
        1 => items.pop().unwrap(),
        _ => Term::And(items),
    }
}

/// Disjunction with `false` operands dropped.
pub fn or(items: Vec<Term>) -> Term {
    let mut items: Vec<Term> = items.into_iter().filter(|t| *t != Term::Bool(false)).collect();
    match items.len() {
        0 => Term::Bool(false),
        1 => items.pop().unwrap(),
        _ => Term::Or(items),
    }
}

/// A tuple of `n` leaves; `(t.0, .., t.n-1)` collapses back to `t`.
pub fn tuple(items: Vec<Term>) -> Term {
    if items.len() == 1 {
        return items.into_iter().next().unwrap();
    }
    if let Some(Term::Proj(base, 0)) = items.first() {
        let whole = items
            .iter()
            .enumerate()
            .all(|(i, t)| matches!(t, Term::Proj(b, j) if *j == i && b == base));
        if whole {
            return (**base).clone();
        }
    }
    Term::Tuple(items)
}

pub fn proj(t: Term, i: usize) -> Term {
    match t {
        Term::Tuple(mut items) => items.swap_remove(i),
        t => Term::Proj(Box::new(t), i),
    }
}

/// Membership, beta-reducing set comprehensions.
pub fn member(set: Term, args: Vec<Term>) -> Term {
    match set {
        Term::SetLambda(params, body) if params.len() == args.len() => {
            let map: Vec<(String, Term)> = params.into_iter().map(|(n, _)| n).zip(args).collect();
            subst(&body, &map)
        }
        set => Term::Member(Box::new(set), args),
    }
}

/// Capture-naive substitution that respects shadowing by inner binders.
pub fn subst(t: &Term, map: &[(String, Term)]) -> Term {
    let go = |x: &Term| subst(x, map);
    let bx = |x: &Term| Box::new(subst(x, map));
    let under = |params: &Params| -> Vec<(String, Term)> {
        map.iter().filter(|(n, _)| !params.iter().any(|(p, _)| p == n)).cloned().collect()
    };
    match t {
        Term::Sym(s) => map.iter().find(|(n, _)| n == s).map(|(_, v)| v.clone()).unwrap_or_else(|| t.clone()),
        Term::Int(_) | Term::Bool(_) => t.clone(),
        Term::Field(x, f) => field(go(x), f),
        Term::Read(m, args) => read(go(m), args.iter().map(go).collect()),
        Term::Member(m, args) => member(go(m), args.iter().map(go).collect()),
        Term::Call(f, args) => Term::Call(f.clone(), args.iter().map(go).collect()),
        Term::Tuple(items) => tuple(items.iter().map(go).collect()),
        Term::Proj(x, i) => proj(go(x), *i),
        Term::SetLambda(ps, body) => Term::SetLambda(ps.clone(), Box::new(subst(body, &under(ps)))),
        Term::Forall(ps, body) => Term::Forall(ps.clone(), Box::new(subst(body, &under(ps)))),
        Term::Exists(ps, body) => Term::Exists(ps.clone(), Box::new(subst(body, &under(ps)))),
        Term::Not(x) => not(go(x)),
        Term::And(xs) => and(xs.iter().map(go).collect()),
        Term::Or(xs) => or(xs.iter().map(go).collect()),
        Term::Implies(a, b) => Term::Implies(bx(a), bx(b)),
        Term::Iff(a, b) => Term::Iff(bx(a), bx(b)),
        Term::Eq(a, b) => Term::Eq(bx(a), bx(b)),
        Term::Cmp(op, a, b) => Term::Cmp(*op, bx(a), bx(b)),
        Term::Arith(op, a, b) => Term::Arith(*op, bx(a), bx(b)),
        Term::Ite(c, a, b) => Term::Ite(bx(c), bx(a), bx(b)),
    }
}
