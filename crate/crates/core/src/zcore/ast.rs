//! Abstract syntax for Z test specifications.

use std::fmt;

/// ZMT type synonyms that expand into power sets of products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SynKind {
    Rel,
    Pfun,
    Fun,
    Ffun,
    Seq,
    Finset,
}

impl SynKind {
    pub fn arity(self) -> usize {
        match self {
            SynKind::Rel | SynKind::Pfun | SynKind::Fun | SynKind::Ffun => 2,
            SynKind::Seq | SynKind::Finset => 1,
        }
    }

    /// Keyword used by the ASCII surface syntax.
    pub fn keyword(self) -> &'static str {
        match self {
            SynKind::Rel => "rel",
            SynKind::Pfun => "pfun",
            SynKind::Fun => "fun",
            SynKind::Ffun => "ffun",
            SynKind::Seq => "seq",
            SynKind::Finset => "fset",
        }
    }

    /// True for the synonyms whose values can be applied to an argument.
    pub fn is_function(self) -> bool {
        matches!(self, SynKind::Pfun | SynKind::Fun | SynKind::Ffun | SynKind::Seq)
    }
}

/// A Z type or carrier-set expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Int,
    Nat,
    Basic(String),
    Free { name: String, constants: Vec<String> },
    Product(Box<TypeExpr>, Box<TypeExpr>),
    Power(Box<TypeExpr>),
    Synonym(SynKind, Vec<TypeExpr>),
}

impl TypeExpr {
    pub fn product(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::Product(Box::new(l), Box::new(r))
    }

    pub fn power(t: TypeExpr) -> TypeExpr {
        TypeExpr::Power(Box::new(t))
    }

    pub fn synonym(kind: SynKind, args: Vec<TypeExpr>) -> TypeExpr {
        debug_assert_eq!(kind.arity(), args.len());
        TypeExpr::Synonym(kind, args)
    }

    pub fn rel(x: TypeExpr, y: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Rel, vec![x, y])
    }

    pub fn pfun(x: TypeExpr, y: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Pfun, vec![x, y])
    }

    pub fn fun(x: TypeExpr, y: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Fun, vec![x, y])
    }

    pub fn ffun(x: TypeExpr, y: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Ffun, vec![x, y])
    }

    pub fn seq(x: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Seq, vec![x])
    }

    pub fn finset(x: TypeExpr) -> TypeExpr {
        TypeExpr::synonym(SynKind::Finset, vec![x])
    }

    pub fn free(name: &str, constants: &[&str]) -> TypeExpr {
        TypeExpr::Free {
            name: name.to_string(),
            constants: constants.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn basic(name: &str) -> TypeExpr {
        TypeExpr::Basic(name.to_string())
    }

    /// Element type of a set-valued type, looking through synonyms.
    pub fn set_element(&self) -> Option<TypeExpr> {
        match self {
            TypeExpr::Power(e) => Some((**e).clone()),
            TypeExpr::Synonym(k, args) => match k {
                SynKind::Finset => Some(args[0].clone()),
                SynKind::Seq => Some(TypeExpr::product(TypeExpr::Nat, args[0].clone())),
                _ => Some(TypeExpr::product(args[0].clone(), args[1].clone())),
            },
            _ => None,
        }
    }

    /// Checks the structural invariants: nonempty distinct free constants and synonym arity.
    pub fn well_formed(&self) -> bool {
        match self {
            TypeExpr::Int | TypeExpr::Nat | TypeExpr::Basic(_) => true,
            TypeExpr::Free { constants, .. } => {
                let mut seen = std::collections::BTreeSet::new();
                !constants.is_empty()
                    && constants.iter().all(|c| !c.is_empty() && seen.insert(c.as_str()))
            }
            TypeExpr::Product(l, r) => l.well_formed() && r.well_formed(),
            TypeExpr::Power(e) => e.well_formed(),
            TypeExpr::Synonym(k, args) => {
                args.len() == k.arity() && args.iter().all(TypeExpr::well_formed)
            }
        }
    }

    pub fn contains_nat(&self) -> bool {
        match self {
            TypeExpr::Nat => true,
            TypeExpr::Int | TypeExpr::Basic(_) | TypeExpr::Free { .. } => false,
            TypeExpr::Product(l, r) => l.contains_nat() || r.contains_nat(),
            TypeExpr::Power(e) => e.contains_nat(),
            TypeExpr::Synonym(SynKind::Seq, args) => {
                // sequence indices are positive, never a ℕ carrier of their own
                args[0].contains_nat()
            }
            TypeExpr::Synonym(_, args) => args.iter().any(TypeExpr::contains_nat),
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::zparse::printer::write_type(f, self, 0)
    }
}

/// Expressions. Maplets `x |-> y` are pairs; longer tuples nest to the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    IntLit(i64),
    EnumLit(String),
    BasicLit { name: String, type_name: String },
    /// Always exactly two components.
    Tuple(Box<Expr>, Box<Expr>),
    SetExt(Vec<Expr>),
    Range(Box<Expr>, Box<Expr>),
    /// `{}` with an optional element type; the type checker infers a missing one.
    EmptySet(Option<TypeExpr>),
    Apply(Box<Expr>, Box<Expr>),
    Dom(Box<Expr>),
    Ran(Box<Expr>),
    Card(Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(v: i64) -> Expr {
        Expr::IntLit(v)
    }

    pub fn enum_lit(name: &str) -> Expr {
        Expr::EnumLit(name.to_string())
    }

    pub fn maplet(a: Expr, b: Expr) -> Expr {
        Expr::Tuple(Box::new(a), Box::new(b))
    }

    pub fn apply(f: Expr, x: Expr) -> Expr {
        Expr::Apply(Box::new(f), Box::new(x))
    }

    pub fn range(lo: Expr, hi: Expr) -> Expr {
        Expr::Range(Box::new(lo), Box::new(hi))
    }

    pub fn dom(e: Expr) -> Expr {
        Expr::Dom(Box::new(e))
    }

    pub fn ran(e: Expr) -> Expr {
        Expr::Ran(Box::new(e))
    }

    pub fn card(e: Expr) -> Expr {
        Expr::Card(Box::new(e))
    }

    pub fn union(a: Expr, b: Expr) -> Expr {
        Expr::Union(Box::new(a), Box::new(b))
    }

    pub fn inter(a: Expr, b: Expr) -> Expr {
        Expr::Inter(Box::new(a), Box::new(b))
    }

    pub fn diff(a: Expr, b: Expr) -> Expr {
        Expr::Diff(Box::new(a), Box::new(b))
    }

    /// Immediate subexpressions, left to right.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Var(_)
            | Expr::IntLit(_)
            | Expr::EnumLit(_)
            | Expr::BasicLit { .. }
            | Expr::EmptySet(_) => vec![],
            Expr::SetExt(es) => es.iter().collect(),
            Expr::Dom(e) | Expr::Ran(e) | Expr::Card(e) => vec![e],
            Expr::Tuple(a, b)
            | Expr::Range(a, b)
            | Expr::Apply(a, b)
            | Expr::Union(a, b)
            | Expr::Inter(a, b)
            | Expr::Diff(a, b)
            | Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b) => vec![a, b],
        }
    }

    /// Visits every node in pre-order, left to right.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    pub fn mentions_var(&self, name: &str) -> bool {
        let mut found = false;
        self.walk(&mut |e| {
            if matches!(e, Expr::Var(v) if v == name) {
                found = true;
            }
        });
        found
    }

    /// True when the expression contains no variables.
    pub fn is_closed(&self) -> bool {
        let mut closed = true;
        self.walk(&mut |e| {
            if matches!(e, Expr::Var(_)) {
                closed = false;
            }
        });
        closed
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::zparse::printer::write_expr(f, self, 0)
    }
}

/// Atomic predicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pred {
    MemberOf(Expr, Expr),
    NotMemberOf(Expr, Expr),
    Equal(Expr, Expr),
    NotEqual(Expr, Expr),
    SubsetEq(Expr, Expr),
    NotSubsetEq(Expr, Expr),
    Lt(Expr, Expr),
    Leq(Expr, Expr),
    Gt(Expr, Expr),
    Geq(Expr, Expr),
}

impl Pred {
    pub fn operands(&self) -> (&Expr, &Expr) {
        match self {
            Pred::MemberOf(a, b)
            | Pred::NotMemberOf(a, b)
            | Pred::Equal(a, b)
            | Pred::NotEqual(a, b)
            | Pred::SubsetEq(a, b)
            | Pred::NotSubsetEq(a, b)
            | Pred::Lt(a, b)
            | Pred::Leq(a, b)
            | Pred::Gt(a, b)
            | Pred::Geq(a, b) => (a, b),
        }
    }

    pub fn mentions_var(&self, name: &str) -> bool {
        let (a, b) = self.operands();
        a.mentions_var(name) || b.mentions_var(name)
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::zparse::printer::write_pred(f, self)
    }
}

/// A test specification: a named schema whose predicate part is a conjunction of atomics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSpec {
    pub name: String,
    pub includes: Vec<String>,
    pub decls: Vec<(String, TypeExpr)>,
    pub preds: Vec<Pred>,
}

impl TestSpec {
    pub fn new(name: &str) -> Self {
        TestSpec {
            name: name.to_string(),
            includes: Vec::new(),
            decls: Vec::new(),
            preds: Vec::new(),
        }
    }

    pub fn decl(mut self, var: &str, ty: TypeExpr) -> Self {
        self.decls.push((var.to_string(), ty));
        self
    }

    pub fn pred(mut self, p: Pred) -> Self {
        self.preds.push(p);
        self
    }

    pub fn declared_type(&self, var: &str) -> Option<&TypeExpr> {
        self.decls.iter().find(|(v, _)| v == var).map(|(_, t)| t)
    }
}

/// Basic and free types visible to a set of specifications.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeDecls {
    pub basics: Vec<String>,
    pub frees: Vec<(String, Vec<String>)>,
}

impl TypeDecls {
    pub fn free_type(&self, name: &str) -> Option<TypeExpr> {
        self.frees
            .iter()
            .find(|(n, _)| n == name)
            .map(|(n, cs)| TypeExpr::Free { name: n.clone(), constants: cs.clone() })
    }

    pub fn is_basic(&self, name: &str) -> bool {
        self.basics.iter().any(|b| b == name)
    }

    /// The free type declaring `constant`, if any.
    pub fn type_of_constant(&self, constant: &str) -> Option<TypeExpr> {
        self.frees
            .iter()
            .find(|(_, cs)| cs.iter().any(|c| c == constant))
            .map(|(n, cs)| TypeExpr::Free { name: n.clone(), constants: cs.clone() })
    }

    /// Resolves an identifier of the form `<BasicType><digits>` to its basic type,
    /// preferring the longest matching type name.
    pub fn basic_constant_type(&self, ident: &str) -> Option<&str> {
        self.basics
            .iter()
            .filter(|b| {
                ident.len() > b.len()
                    && ident.starts_with(b.as_str())
                    && ident[b.len()..].bytes().all(|c| c.is_ascii_digit())
                    && !ident[b.len()..].starts_with('0')
            })
            .max_by_key(|b| b.len())
            .map(|b| b.as_str())
    }
}
