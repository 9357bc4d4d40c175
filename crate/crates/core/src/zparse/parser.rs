use super::lexer::Tok;
use super::{ParseError, ParseErrorKind, Pos, SourceFile};
use crate::zcore::{Expr, Pred, SynKind, TestSpec, TypeDecls, TypeExpr};

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    types: TypeDecls,
    specs: Vec<TestSpec>,
    /// Variables in scope for the spec being parsed, includes flattened.
    scope: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Copy, PartialEq)]
enum Rel {
    Eq,
    Neq,
    In,
    NotIn,
    Subset,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Parser {
    pub fn new(toks: Vec<(Tok, Pos)>) -> Self {
        Parser { toks, at: 0, types: TypeDecls::default(), specs: Vec::new(), scope: Vec::new() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Kw(x) if *x == k)
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError::new(
            self.pos(),
            ParseErrorKind::Unexpected {
                found: self.peek().describe(),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        ))
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[&format!("`{s}`")])
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.unexpected(&["identifier"]),
        }
    }

    pub fn file(mut self) -> PResult<SourceFile> {
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Kw("basic") => self.basic_decl()?,
                Tok::Kw("free") => self.free_decl()?,
                Tok::Kw("spec") => {
                    let s = self.spec()?;
                    self.specs.push(s);
                }
                _ => return self.unexpected(&["`basic`", "`free`", "`spec`"]),
            }
        }
        Ok(SourceFile { path: None, types: self.types, specs: self.specs })
    }

    fn name_taken(&self, name: &str) -> bool {
        self.types.is_basic(name)
            || self.types.frees.iter().any(|(n, cs)| n == name || cs.iter().any(|c| c == name))
    }

    fn basic_decl(&mut self) -> PResult<()> {
        self.bump();
        loop {
            let (name, pos) = self.ident()?;
            if self.name_taken(&name) {
                return Err(ParseError::new(pos, ParseErrorKind::DuplicateName(name)));
            }
            self.types.basics.push(name);
            if self.is_sym(",") {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_sym(";")
    }

    fn free_decl(&mut self) -> PResult<()> {
        self.bump();
        let (name, pos) = self.ident()?;
        if self.name_taken(&name) {
            return Err(ParseError::new(pos, ParseErrorKind::DuplicateName(name)));
        }
        self.expect_sym("::=")?;
        let mut constants: Vec<String> = Vec::new();
        loop {
            let (c, cpos) = self.ident()?;
            if self.name_taken(&c) || constants.contains(&c) || c == name {
                return Err(ParseError::new(cpos, ParseErrorKind::DuplicateName(c)));
            }
            constants.push(c);
            if self.is_sym("|") {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_sym(";")?;
        self.types.frees.push((name, constants));
        Ok(())
    }

    fn spec(&mut self) -> PResult<TestSpec> {
        self.bump();
        let (name, pos) = self.ident()?;
        if self.specs.iter().any(|s| s.name == name) {
            return Err(ParseError::new(pos, ParseErrorKind::DuplicateSpec(name)));
        }
        self.expect_sym("{")?;
        let mut spec = TestSpec::new(&name);
        self.scope.clear();
        // declaration part
        while !self.is_sym("|") && !self.is_sym("}") {
            self.decl_item(&mut spec)?;
            if self.is_sym(";") {
                self.bump();
            } else if !self.is_sym("|") && !self.is_sym("}") {
                return self.unexpected(&["`;`", "`|`", "`}`"]);
            }
        }
        if self.is_sym("|") {
            self.bump();
            while !self.is_sym("}") {
                let preds = self.pred_line()?;
                spec.preds.extend(preds);
                if self.is_sym(";") {
                    self.bump();
                } else if !self.is_sym("}") {
                    return self.unexpected(&["`;`", "`}`"]);
                }
            }
        }
        self.expect_sym("}")?;
        Ok(spec)
    }

    fn declare(&mut self, name: String, pos: Pos) -> PResult<()> {
        if self.scope.contains(&name) {
            return Err(ParseError::new(pos, ParseErrorKind::DuplicateVariable(name)));
        }
        if self.name_taken(&name) {
            return Err(ParseError::new(pos, ParseErrorKind::DuplicateName(name)));
        }
        self.scope.push(name);
        Ok(())
    }

    fn decl_item(&mut self, spec: &mut TestSpec) -> PResult<()> {
        let (first, pos) = self.ident()?;
        // a lone name is a schema inclusion
        if self.is_sym(";") || self.is_sym("|") || self.is_sym("}") {
            let Some(inc) = self.specs.iter().find(|s| s.name == first).cloned() else {
                return Err(ParseError::new(pos, ParseErrorKind::UnknownInclude(first)));
            };
            let flat = SourceFile { path: None, types: self.types.clone(), specs: self.specs.clone() }
                .flatten(&inc.name)
                .expect("earlier specs resolve");
            for (v, _) in flat.decls {
                if !self.scope.contains(&v) {
                    self.scope.push(v);
                }
            }
            spec.includes.push(first);
            return Ok(());
        }
        let mut names = vec![(first, pos)];
        while self.is_sym(",") {
            self.bump();
            names.push(self.ident()?);
        }
        self.expect_sym(":")?;
        let ty = self.type_expr()?;
        for (n, p) in names {
            self.declare(n.clone(), p)?;
            spec.decls.push((n, ty.clone()));
        }
        Ok(())
    }

    // ---- types ----

    pub fn type_expr(&mut self) -> PResult<TypeExpr> {
        let left = self.product_type()?;
        let kind = match self.peek() {
            Tok::Kw("rel") => SynKind::Rel,
            Tok::Kw("pfun") => SynKind::Pfun,
            Tok::Kw("fun") => SynKind::Fun,
            Tok::Kw("ffun") => SynKind::Ffun,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.type_expr()?;
        Ok(TypeExpr::Synonym(kind, vec![left, right]))
    }

    fn product_type(&mut self) -> PResult<TypeExpr> {
        let mut t = self.unary_type()?;
        while matches!(self.peek(), Tok::Ident(x) if x == "x") {
            self.bump();
            let r = self.unary_type()?;
            t = TypeExpr::product(t, r);
        }
        Ok(t)
    }

    fn unary_type(&mut self) -> PResult<TypeExpr> {
        match self.peek() {
            Tok::Kw("P") => {
                self.bump();
                Ok(TypeExpr::power(self.unary_type()?))
            }
            Tok::Kw("seq") => {
                self.bump();
                Ok(TypeExpr::seq(self.unary_type()?))
            }
            Tok::Kw("fset") => {
                self.bump();
                Ok(TypeExpr::finset(self.unary_type()?))
            }
            Tok::Kw("INT") => {
                self.bump();
                Ok(TypeExpr::Int)
            }
            Tok::Kw("NAT") => {
                self.bump();
                Ok(TypeExpr::Nat)
            }
            Tok::Sym("(") => {
                self.bump();
                let t = self.type_expr()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Tok::Ident(name) => {
                let name = name.clone();
                let pos = self.pos();
                self.bump();
                if self.types.is_basic(&name) {
                    Ok(TypeExpr::Basic(name))
                } else if let Some(t) = self.types.free_type(&name) {
                    Ok(t)
                } else {
                    Err(ParseError::new(pos, ParseErrorKind::UnknownType(name)))
                }
            }
            _ => self.unexpected(&["type"]),
        }
    }

    fn starts_type(&self) -> bool {
        match self.peek() {
            Tok::Kw("P" | "seq" | "fset" | "INT" | "NAT") | Tok::Sym("(") => true,
            Tok::Ident(n) => self.types.is_basic(n) || self.types.free_type(n).is_some(),
            _ => false,
        }
    }

    // ---- predicates ----

    fn rel_op(&self) -> Option<Rel> {
        Some(match self.peek() {
            Tok::Sym("=") => Rel::Eq,
            Tok::Sym("/=" | "!=") => Rel::Neq,
            Tok::Kw("in") => Rel::In,
            Tok::Kw("notin") => Rel::NotIn,
            Tok::Kw("subseteq") => Rel::Subset,
            Tok::Sym("<") => Rel::Lt,
            Tok::Sym("<=") => Rel::Le,
            Tok::Sym(">") => Rel::Gt,
            Tok::Sym(">=") => Rel::Ge,
            _ => return None,
        })
    }

    fn pred_line(&mut self) -> PResult<Vec<Pred>> {
        if self.is_kw("not") {
            self.bump();
            let a = self.expr()?;
            if !self.is_kw("subseteq") {
                return self.unexpected(&["`subseteq`"]);
            }
            self.bump();
            let b = self.expr()?;
            return Ok(vec![Pred::NotSubsetEq(a, b)]);
        }
        let first = self.expr()?;
        let Some(op) = self.rel_op() else {
            return self.unexpected(&[
                "`=`", "`/=`", "`in`", "`notin`", "`subseteq`", "`<`", "`<=`", "`>`", "`>=`",
            ]);
        };
        self.bump();
        let second = self.expr()?;
        let mut out = vec![make_pred(op, first, second.clone())];
        let is_cmp = |r: Rel| matches!(r, Rel::Lt | Rel::Le | Rel::Gt | Rel::Ge);
        let mut prev = second;
        // `a < b < c` sugar
        while let Some(next) = self.rel_op() {
            if !is_cmp(op) || !is_cmp(next) {
                return self.unexpected(&["`;`", "`}`"]);
            }
            self.bump();
            let e = self.expr()?;
            out.push(make_pred(next, prev, e.clone()));
            prev = e;
        }
        Ok(out)
    }

    // ---- expressions ----

    pub fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.range_expr()?;
        while self.is_sym("|->") {
            self.bump();
            let r = self.range_expr()?;
            e = Expr::maplet(e, r);
        }
        Ok(e)
    }

    fn range_expr(&mut self) -> PResult<Expr> {
        let lo = self.add_expr()?;
        if self.is_sym("..") {
            self.bump();
            let hi = self.add_expr()?;
            return Ok(Expr::range(lo, hi));
        }
        Ok(lo)
    }

    fn add_expr(&mut self) -> PResult<Expr> {
        let mut e = self.mul_expr()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek() {
                Tok::Sym("+") => Expr::Add,
                Tok::Sym("-") => Expr::Sub,
                Tok::Kw("cup") => Expr::Union,
                Tok::Kw("setminus") => Expr::Diff,
                _ => return Ok(e),
            };
            self.bump();
            let r = self.mul_expr()?;
            e = ctor(Box::new(e), Box::new(r));
        }
    }

    fn mul_expr(&mut self) -> PResult<Expr> {
        let mut e = self.prefix_expr()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek() {
                Tok::Sym("*") => Expr::Mul,
                Tok::Kw("cap") => Expr::Inter,
                _ => return Ok(e),
            };
            self.bump();
            let r = self.prefix_expr()?;
            e = ctor(Box::new(e), Box::new(r));
        }
    }

    fn prefix_expr(&mut self) -> PResult<Expr> {
        match self.peek() {
            Tok::Kw("dom") => {
                self.bump();
                Ok(Expr::dom(self.prefix_expr()?))
            }
            Tok::Kw("ran") => {
                self.bump();
                Ok(Expr::ran(self.prefix_expr()?))
            }
            Tok::Sym("#") => {
                self.bump();
                Ok(Expr::card(self.prefix_expr()?))
            }
            Tok::Sym("-") => {
                self.bump();
                if let Tok::Int(v) = *self.peek() {
                    self.bump();
                    return Ok(Expr::IntLit(-v));
                }
                let e = self.prefix_expr()?;
                Ok(Expr::Sub(Box::new(Expr::IntLit(0)), Box::new(e)))
            }
            _ => self.app_expr(),
        }
    }

    fn app_expr(&mut self) -> PResult<Expr> {
        let mut e = self.atom()?;
        while self.is_sym("@") {
            self.bump();
            let x = self.atom()?;
            e = Expr::apply(e, x);
        }
        Ok(e)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::IntLit(v))
            }
            Tok::Ident(name) => {
                self.bump();
                self.resolve_ident(name, pos)
            }
            Tok::Sym("(") => {
                self.bump();
                let mut e = self.expr()?;
                while self.is_sym(",") {
                    self.bump();
                    let r = self.expr()?;
                    e = Expr::maplet(e, r);
                }
                self.expect_sym(")")?;
                Ok(e)
            }
            Tok::Sym("{") => {
                self.bump();
                if self.is_sym("}") {
                    self.bump();
                    if self.starts_type() {
                        let t = self.unary_type()?;
                        return Ok(Expr::EmptySet(Some(t)));
                    }
                    return Ok(Expr::EmptySet(None));
                }
                let mut items = vec![self.expr()?];
                while self.is_sym(",") {
                    self.bump();
                    items.push(self.expr()?);
                }
                self.expect_sym("}")?;
                Ok(Expr::SetExt(items))
            }
            _ => self.unexpected(&["expression"]),
        }
    }

    fn resolve_ident(&self, name: String, pos: Pos) -> PResult<Expr> {
        if self.scope.contains(&name) {
            return Ok(Expr::Var(name));
        }
        if self.types.type_of_constant(&name).is_some() {
            return Ok(Expr::EnumLit(name));
        }
        if let Some(ty) = self.types.basic_constant_type(&name) {
            return Ok(Expr::BasicLit { type_name: ty.to_string(), name });
        }
        Err(ParseError::new(pos, ParseErrorKind::UndeclaredVariable(name)))
    }
}

fn make_pred(op: Rel, a: Expr, b: Expr) -> Pred {
    match op {
        Rel::Eq => Pred::Equal(a, b),
        Rel::Neq => Pred::NotEqual(a, b),
        Rel::In => Pred::MemberOf(a, b),
        Rel::NotIn => Pred::NotMemberOf(a, b),
        Rel::Subset => Pred::SubsetEq(a, b),
        Rel::Lt => Pred::Lt(a, b),
        Rel::Le => Pred::Leq(a, b),
        Rel::Gt => Pred::Gt(a, b),
        Rel::Ge => Pred::Geq(a, b),
    }
}
