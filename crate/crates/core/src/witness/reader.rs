//! Readers for emitted scripts and solver models in both dialects.

use thiserror::Error;

use crate::smt_emit::term::{Arith, Cmp};
use crate::smt_emit::Sort;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ReadError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ReadError> {
    Err(ReadError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Sym(String),
    Int(i64),
    Bool(bool),
    Field(Box<Ast>, String),
    /// Zero-based.
    Proj(Box<Ast>, usize),
    /// Function application, array read or operator call.
    App(Box<Ast>, Vec<Ast>),
    Tuple(Vec<Ast>),
    Lambda(Vec<(String, Sort)>, Box<Ast>),
    Not(Box<Ast>),
    And(Vec<Ast>),
    Or(Vec<Ast>),
    Implies(Box<Ast>, Box<Ast>),
    Iff(Box<Ast>, Box<Ast>),
    Eq(Box<Ast>, Box<Ast>),
    Cmp(Cmp, Box<Ast>, Box<Ast>),
    Arith(Arith, Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Ite(Box<Ast>, Box<Ast>, Box<Ast>),
    Forall(Vec<(String, Sort)>, Box<Ast>),
    Exists(Vec<(String, Sort)>, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    /// Type declarations; scalar/datatype constants are listed.
    DefineType(String, Vec<String>),
    Declare(String, Sort),
    Define(String, Sort, Ast),
    Assert(Ast),
    /// Check, model requests and other commands.
    Command(String),
}

fn field_name(s: &str) -> Result<&'static str, ReadError> {
    Ok(match s {
        "dom" => "dom",
        "law" => "law",
        "bij" => "bij",
        "card" => "card",
        "set" => "set",
        other => return err(format!("unknown record field `{other}`")),
    })
}

// ---------- Yices ----------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn sx_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<String>| {
        if cur.is_empty() {
            return;
        }
        // `x::T` is three tokens
        let parts: Vec<&str> = cur.split("::").collect();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                out.push("::".to_string());
            }
            if !p.is_empty() {
                out.push(p.to_string());
            }
        }
        cur.clear();
    };
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            ';' => {
                flush(&mut cur, &mut out);
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' | ')' => {
                flush(&mut cur, &mut out);
                out.push(c.to_string());
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// Reads every top-level s-expression in `text`.
pub fn read_sexps(text: &str) -> Result<Vec<Sx>, ReadError> {
    let toks = sx_tokens(text);
    let mut stack: Vec<Vec<Sx>> = vec![Vec::new()];
    for t in toks {
        match t.as_str() {
            "(" => stack.push(Vec::new()),
            ")" => {
                let list = stack.pop().unwrap();
                match stack.last_mut() {
                    Some(parent) => parent.push(Sx::List(list)),
                    None => return err("unbalanced `)`"),
                }
            }
            _ => stack.last_mut().unwrap().push(Sx::Atom(t)),
        }
    }
    if stack.len() != 1 {
        return err("unbalanced `(`");
    }
    Ok(stack.pop().unwrap())
}

fn atom(s: &Sx) -> Option<&str> {
    match s {
        Sx::Atom(a) => Some(a),
        Sx::List(_) => None,
    }
}

fn yices_sort(s: &Sx) -> Result<Sort, ReadError> {
    match s {
        Sx::Atom(a) => Ok(match a.as_str() {
            "int" => Sort::Int,
            "nat" => Sort::Nat,
            "nat1" => Sort::Nat1,
            "bool" => Sort::Bool,
            name => Sort::Named(name.to_string()),
        }),
        Sx::List(items) => match items.first().and_then(atom) {
            Some("tuple") => Ok(Sort::Tuple(items[1..].iter().map(yices_sort).collect::<Result<_, _>>()?)),
            Some("->") if items.len() >= 3 => {
                let args = items[1..items.len() - 1].iter().map(yices_sort).collect::<Result<_, _>>()?;
                Ok(Sort::Map(args, Box::new(yices_sort(items.last().unwrap())?)))
            }
            Some("record") => {
                let fields = typed_names(&items[1..])?;
                Ok(Sort::Record(
                    fields.into_iter().map(|(f, s)| Ok((field_name(&f)?, s))).collect::<Result<_, ReadError>>()?,
                ))
            }
            _ => err(format!("unknown sort {s:?}")),
        },
    }
}

/// `x :: S y :: T ..`
fn typed_names(items: &[Sx]) -> Result<Vec<(String, Sort)>, ReadError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        match (items.get(i).and_then(atom), items.get(i + 1).and_then(atom), items.get(i + 2)) {
            (Some(name), Some("::"), Some(sort)) => out.push((name.to_string(), yices_sort(sort)?)),
            _ => return err("malformed binder list"),
        }
        i += 3;
    }
    Ok(out)
}

fn binders(s: &Sx) -> Result<Vec<(String, Sort)>, ReadError> {
    match s {
        Sx::List(items) => typed_names(items),
        _ => err("expected a binder list"),
    }
}

pub fn yices_term(s: &Sx) -> Result<Ast, ReadError> {
    let items = match s {
        Sx::Atom(a) => {
            return Ok(match a.as_str() {
                "true" => Ast::Bool(true),
                "false" => Ast::Bool(false),
                _ => match a.parse::<i64>() {
                    Ok(i) => Ast::Int(i),
                    Err(_) => Ast::Sym(a.clone()),
                },
            })
        }
        Sx::List(items) => items,
    };
    let Some(head) = items.first() else { return err("empty application") };
    let args = || items[1..].iter().map(yices_term).collect::<Result<Vec<_>, _>>();
    let two = || -> Result<(Box<Ast>, Box<Ast>), ReadError> {
        match &items[1..] {
            [a, b] => Ok((Box::new(yices_term(a)?), Box::new(yices_term(b)?))),
            _ => err(format!("`{}` takes two arguments", atom(head).unwrap_or("?"))),
        }
    };
    let op = match atom(head) {
        Some(op) => op,
        None => return Ok(Ast::App(Box::new(yices_term(head)?), args()?)),
    };
    Ok(match op {
        "select" => {
            let [t, f] = &items[1..] else { return err("select takes two arguments") };
            let t = Box::new(yices_term(t)?);
            let f = atom(f).ok_or_else(|| ReadError("bad selector".into()))?;
            match f.parse::<usize>() {
                Ok(i) if i >= 1 => Ast::Proj(t, i - 1),
                _ => Ast::Field(t, f.to_string()),
            }
        }
        "mk-tuple" => Ast::Tuple(args()?),
        "lambda" | "forall" | "exists" => {
            let [ps, body] = &items[1..] else { return err(format!("malformed {op}")) };
            let (ps, body) = (binders(ps)?, Box::new(yices_term(body)?));
            match op {
                "lambda" => Ast::Lambda(ps, body),
                "forall" => Ast::Forall(ps, body),
                _ => Ast::Exists(ps, body),
            }
        }
        "not" => match &items[1..] {
            [a] => Ast::Not(Box::new(yices_term(a)?)),
            _ => return err("not takes one argument"),
        },
        "and" => Ast::And(args()?),
        "or" => Ast::Or(args()?),
        "=>" => {
            let (a, b) = two()?;
            Ast::Implies(a, b)
        }
        "<=>" => {
            let (a, b) = two()?;
            Ast::Iff(a, b)
        }
        "=" => {
            let (a, b) = two()?;
            Ast::Eq(a, b)
        }
        "<" | "<=" | ">" | ">=" => {
            let (a, b) = two()?;
            let c = match op {
                "<" => Cmp::Lt,
                "<=" => Cmp::Le,
                ">" => Cmp::Gt,
                _ => Cmp::Ge,
            };
            Ast::Cmp(c, a, b)
        }
        "-" if items.len() == 2 => Ast::Neg(Box::new(yices_term(&items[1])?)),
        "+" | "-" | "*" => {
            let (a, b) = two()?;
            let o = match op {
                "+" => Arith::Add,
                "-" => Arith::Sub,
                _ => Arith::Mul,
            };
            Ast::Arith(o, a, b)
        }
        "ite" => {
            let [c, a, b] = &items[1..] else { return err("ite takes three arguments") };
            Ast::Ite(Box::new(yices_term(c)?), Box::new(yices_term(a)?), Box::new(yices_term(b)?))
        }
        _ => Ast::App(Box::new(yices_term(head)?), args()?),
    })
}

pub fn yices_stmt(s: &Sx) -> Result<Stmt, ReadError> {
    let Sx::List(items) = s else { return err("expected a command") };
    match items.first().and_then(atom) {
        Some("define-type") => {
            let name = items.get(1).and_then(atom).ok_or_else(|| ReadError("malformed define-type".into()))?;
            let consts = match items.get(2) {
                Some(Sx::List(body)) if body.first().and_then(atom) == Some("scalar") => {
                    body[1..].iter().filter_map(atom).map(str::to_string).collect()
                }
                _ => Vec::new(),
            };
            Ok(Stmt::DefineType(name.to_string(), consts))
        }
        Some("define") => match &items[1..] {
            [Sx::Atom(n), Sx::Atom(c), sort] if c == "::" => Ok(Stmt::Declare(n.clone(), yices_sort(sort)?)),
            [Sx::Atom(n), Sx::Atom(c), sort, body] if c == "::" => {
                Ok(Stmt::Define(n.clone(), yices_sort(sort)?, yices_term(body)?))
            }
            _ => err("malformed define"),
        },
        Some("assert") if items.len() == 2 => Ok(Stmt::Assert(yices_term(&items[1])?)),
        Some(cmd) => Ok(Stmt::Command(cmd.to_string())),
        None => err("expected a command"),
    }
}

// ---------- CVC3 ----------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Num(i64),
    Bit(bool),
    Sym(&'static str),
}

const SYMBOLS: &[&str] = &[
    "<=>", "[#", "#]", "=>", "<=", ">=", "/=", "->", "(", ")", "[", "]", ",", ":", ";", ".", "=", "<", ">", "+",
    "-", "*", "|",
];

fn cvc_tokens(text: &str) -> Result<Vec<Tok>, ReadError> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '%' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if text[i..].starts_with("0bin") {
            let bit = &text[i + 4..i + 5];
            out.push(Tok::Bit(bit == "1"));
            i += 5;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().map_err(|_| ReadError(format!("bad number `{}`", &text[start..i])))?;
            out.push(Tok::Num(n));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || matches!(b[i], b'_' | b'?' | b'!')) {
                i += 1;
            }
            out.push(Tok::Id(text[start..i].to_string()));
            continue;
        }
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                out.push(Tok::Sym(s));
                i += s.len();
                continue 'outer;
            }
        }
        return err(format!("unexpected character `{c}`"));
    }
    Ok(out)
}

struct Cvc {
    toks: Vec<Tok>,
    pos: usize,
}

const IFF: u8 = 1;
const IMPL: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const CMP: u8 = 6;
const ADD: u8 = 7;
const MUL: u8 = 8;
const NEG: u8 = 9;

impl Cvc {
    fn new(text: &str) -> Result<Self, ReadError> {
        Ok(Cvc { toks: cvc_tokens(text)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(x)) if x == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ReadError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            err(format!("expected `{s}`, found {:?}", self.peek()))
        }
    }

    fn expect_kw(&mut self, k: &str) -> Result<(), ReadError> {
        if self.is_kw(k) {
            self.pos += 1;
            Ok(())
        } else {
            err(format!("expected `{k}`, found {:?}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, ReadError> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            t => err(format!("expected an identifier, found {t:?}")),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn sort(&mut self) -> Result<Sort, ReadError> {
        if self.eat_sym("[#") {
            let mut fields = Vec::new();
            loop {
                let f = self.ident()?;
                self.expect_sym(":")?;
                fields.push((field_name(&f)?, self.sort()?));
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym("#]")?;
            return Ok(Sort::Record(fields));
        }
        if self.eat_sym("[") {
            let mut items = vec![self.sort()?];
            while self.eat_sym(",") {
                items.push(self.sort()?);
            }
            self.expect_sym("]")?;
            return Ok(Sort::Tuple(items));
        }
        if self.eat_sym("(") {
            let mut args = vec![self.sort()?];
            while self.eat_sym(",") {
                args.push(self.sort()?);
            }
            self.expect_sym(")")?;
            self.expect_sym("->")?;
            return Ok(Sort::Fun(args, Box::new(self.sort()?)));
        }
        let name = self.ident()?;
        Ok(match name.as_str() {
            "INT" => Sort::Int,
            "NAT" => Sort::Nat,
            "NAT1" => Sort::Nat1,
            "BOOLEAN" => Sort::Bool,
            "BITVECTOR" => {
                self.expect_sym("(")?;
                if self.next() != Some(Tok::Num(1)) {
                    return err("only BITVECTOR(1) is supported");
                }
                self.expect_sym(")")?;
                Sort::Bool
            }
            "ARRAY" => {
                let idx = self.sort()?;
                self.expect_kw("OF")?;
                Sort::Map(vec![idx], Box::new(self.sort()?))
            }
            _ => Sort::Named(name),
        })
    }

    /// `(a, b : S, n : T)`
    fn params(&mut self) -> Result<Vec<(String, Sort)>, ReadError> {
        self.expect_sym("(")?;
        let mut out = Vec::new();
        loop {
            let mut names = vec![self.ident()?];
            while self.eat_sym(",") {
                names.push(self.ident()?);
            }
            self.expect_sym(":")?;
            let s = self.sort()?;
            out.extend(names.into_iter().map(|n| (n, s.clone())));
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    fn primary(&mut self) -> Result<Ast, ReadError> {
        let t = self.next().ok_or_else(|| ReadError("unexpected end of input".into()))?;
        let mut e = match t {
            Tok::Num(n) => Ast::Int(n),
            Tok::Bit(b) => Ast::Bool(b),
            Tok::Sym("(") => {
                let first = self.expr(0)?;
                if self.eat_sym(",") {
                    let mut items = vec![first, self.expr(0)?];
                    while self.eat_sym(",") {
                        items.push(self.expr(0)?);
                    }
                    self.expect_sym(")")?;
                    Ast::Tuple(items)
                } else {
                    self.expect_sym(")")?;
                    first
                }
            }
            Tok::Sym("-") => Ast::Neg(Box::new(self.expr(NEG)?)),
            Tok::Id(id) => match id.as_str() {
                "TRUE" => Ast::Bool(true),
                "FALSE" => Ast::Bool(false),
                "NOT" => Ast::Not(Box::new(self.expr(NOT)?)),
                "ARRAY" => {
                    let ps = self.params()?;
                    self.expect_sym(":")?;
                    Ast::Lambda(ps, Box::new(self.expr(0)?))
                }
                "FORALL" | "EXISTS" => {
                    let ps = self.params()?;
                    self.expect_sym(":")?;
                    let body = Box::new(self.expr(0)?);
                    if id == "FORALL" {
                        Ast::Forall(ps, body)
                    } else {
                        Ast::Exists(ps, body)
                    }
                }
                "IF" => {
                    let c = self.expr(0)?;
                    self.expect_kw("THEN")?;
                    let a = self.expr(0)?;
                    self.expect_kw("ELSE")?;
                    let b = self.expr(0)?;
                    self.expect_kw("ENDIF")?;
                    Ast::Ite(Box::new(c), Box::new(a), Box::new(b))
                }
                _ => {
                    if self.eat_sym("(") {
                        let mut args = vec![self.expr(0)?];
                        while self.eat_sym(",") {
                            args.push(self.expr(0)?);
                        }
                        self.expect_sym(")")?;
                        Ast::App(Box::new(Ast::Sym(id)), args)
                    } else {
                        Ast::Sym(id)
                    }
                }
            },
            t => return err(format!("unexpected {t:?}")),
        };
        // postfix selectors and reads
        loop {
            if self.eat_sym("[") {
                let idx = self.expr(0)?;
                self.expect_sym("]")?;
                e = Ast::App(Box::new(e), vec![idx]);
            } else if self.eat_sym(".") {
                match self.next() {
                    Some(Tok::Num(i)) => e = Ast::Proj(Box::new(e), i as usize),
                    Some(Tok::Id(f)) => e = Ast::Field(Box::new(e), f),
                    t => return err(format!("bad selector {t:?}")),
                }
            } else {
                return Ok(e);
            }
        }
    }

    fn infix(&self) -> Option<(u8, &'static str)> {
        match self.peek()? {
            Tok::Sym(s) => {
                let lv = match *s {
                    "<=>" => IFF,
                    "=>" => IMPL,
                    "=" | "/=" | "<" | "<=" | ">" | ">=" => CMP,
                    "+" | "-" => ADD,
                    "*" => MUL,
                    _ => return None,
                };
                Some((lv, s))
            }
            Tok::Id(k) if k == "AND" => Some((AND, "AND")),
            Tok::Id(k) if k == "OR" => Some((OR, "OR")),
            _ => None,
        }
    }

    /// Precedence climbing; operators binding at least `min` are consumed.
    fn expr(&mut self, min: u8) -> Result<Ast, ReadError> {
        let mut lhs = self.primary()?;
        while let Some((lv, op)) = self.infix() {
            if lv < min {
                break;
            }
            self.pos += 1;
            lhs = match op {
                "AND" | "OR" => {
                    let mut items = vec![lhs, self.expr(lv + 1)?];
                    while self.infix().map(|(_, o)| o) == Some(op) {
                        self.pos += 1;
                        items.push(self.expr(lv + 1)?);
                    }
                    if op == "AND" {
                        Ast::And(items)
                    } else {
                        Ast::Or(items)
                    }
                }
                // right-associative
                "=>" => Ast::Implies(Box::new(lhs), Box::new(self.expr(lv)?)),
                _ => {
                    let rhs = Box::new(self.expr(lv + 1)?);
                    let lhs = Box::new(lhs);
                    match op {
                        "<=>" => Ast::Iff(lhs, rhs),
                        "=" => Ast::Eq(lhs, rhs),
                        "/=" => Ast::Not(Box::new(Ast::Eq(lhs, rhs))),
                        "<" => Ast::Cmp(Cmp::Lt, lhs, rhs),
                        "<=" => Ast::Cmp(Cmp::Le, lhs, rhs),
                        ">" => Ast::Cmp(Cmp::Gt, lhs, rhs),
                        ">=" => Ast::Cmp(Cmp::Ge, lhs, rhs),
                        "+" => Ast::Arith(Arith::Add, lhs, rhs),
                        "-" => Ast::Arith(Arith::Sub, lhs, rhs),
                        _ => Ast::Arith(Arith::Mul, lhs, rhs),
                    }
                }
            };
            if lv == CMP || lv == IFF {
                // non-associative
                if self.infix().map_or(false, |(l, _)| l == lv) {
                    return err("chained comparison needs brackets");
                }
            }
        }
        Ok(lhs)
    }

    fn stmt(&mut self) -> Result<Stmt, ReadError> {
        let s = if self.is_kw("ASSERT") {
            self.pos += 1;
            Stmt::Assert(self.expr(0)?)
        } else if self.is_kw("DATATYPE") {
            self.pos += 1;
            let name = self.ident()?;
            self.expect_sym("=")?;
            let mut consts = vec![self.ident()?];
            while self.eat_sym("|") {
                consts.push(self.ident()?);
            }
            self.expect_kw("END")?;
            Stmt::DefineType(name, consts)
        } else if matches!(self.toks.get(self.pos + 1), Some(Tok::Sym(":"))) {
            let name = self.ident()?;
            self.pos += 1;
            if self.is_kw("TYPE") {
                // `X : TYPE;` or `NAT : TYPE = SUBTYPE(..);`
                self.pos = self.toks.len() - usize::from(self.toks.last() == Some(&Tok::Sym(";")));
                Stmt::DefineType(name, Vec::new())
            } else {
                let sort = self.sort()?;
                if self.eat_sym("=") {
                    Stmt::Define(name, sort, self.expr(0)?)
                } else {
                    Stmt::Declare(name, sort)
                }
            }
        } else {
            let cmd = self.ident()?;
            Stmt::Command(cmd)
        };
        self.eat_sym(";");
        if !self.done() {
            return err(format!("trailing input at {:?}", self.peek()));
        }
        Ok(s)
    }
}

/// Parses one CVC3 statement (the trailing `;` is optional).
pub fn cvc3_stmt(text: &str) -> Result<Stmt, ReadError> {
    Cvc::new(text)?.stmt()
}

/// Parses a CVC3 expression.
pub fn cvc3_term(text: &str) -> Result<Ast, ReadError> {
    let mut p = Cvc::new(text)?;
    let e = p.expr(0)?;
    if !p.done() {
        return err(format!("trailing input at {:?}", p.peek()));
    }
    Ok(e)
}

/// Parses one Yices command.
pub fn yices_command(text: &str) -> Result<Stmt, ReadError> {
    match read_sexps(text)?.as_slice() {
        [one] => yices_stmt(one),
        other => err(format!("expected one command, found {}", other.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yices_binders_and_selects() {
        let s = yices_command("(define otSet::(-> REVENT int bool) (lambda (x::REVENT y::int) (and ((select ot dom) x) (= ((select ot law) x) y))))").unwrap();
        let Stmt::Define(n, sort, Ast::Lambda(ps, _)) = s else { panic!("{s:?}") };
        assert_eq!(n, "otSet");
        assert_eq!(sort, Sort::Map(vec![Sort::Named("REVENT".into()), Sort::Int], Box::new(Sort::Bool)));
        assert_eq!(ps.len(), 2);
        assert_eq!(yices_term(&read_sexps("(select p 2)").unwrap()[0]).unwrap(), Ast::Proj(Box::new(Ast::Sym("p".into())), 1));
        assert_eq!(yices_term(&read_sexps("(- 3)").unwrap()[0]).unwrap(), Ast::Neg(Box::new(Ast::Int(3))));
    }

    #[test]
    fn cvc3_precedence() {
        let e = cvc3_term("A[x] = 0bin1 AND B[x] = 0bin1 => x.0 >= 0").unwrap();
        let Ast::Implies(l, _) = e else { panic!() };
        assert!(matches!(*l, Ast::And(ref v) if v.len() == 2));
        let q = cvc3_term("s(A, B) <=> FORALL (x : INT) : A[x] = 0bin1 => B[x] = 0bin1").unwrap();
        assert!(matches!(q, Ast::Iff(_, ref r) if matches!(**r, Ast::Forall(..))));
        assert_eq!(
            cvc3_term("1 + IF a THEN 1 ELSE 0 ENDIF = 2").unwrap(),
            Ast::Eq(
                Box::new(Ast::Arith(
                    Arith::Add,
                    Box::new(Ast::Int(1)),
                    Box::new(Ast::Ite(Box::new(Ast::Sym("a".into())), Box::new(Ast::Int(1)), Box::new(Ast::Int(0))))
                )),
                Box::new(Ast::Int(2))
            )
        );
    }

    #[test]
    fn cvc3_statements() {
        let s = cvc3_stmt("A : [# set : ARRAY [INT, B] OF BITVECTOR(1), bij : ARRAY [INT, B] OF NAT1, card : NAT #];").unwrap();
        let Stmt::Declare(_, Sort::Record(fs)) = s else { panic!() };
        assert_eq!(fs[0].1, Sort::Map(vec![Sort::Tuple(vec![Sort::Int, Sort::Named("B".into())])], Box::new(Sort::Bool)));
        assert_eq!(cvc3_stmt("DATATYPE B = B1 | B2 END;").unwrap(), Stmt::DefineType("B".into(), vec!["B1".into(), "B2".into()]));
        assert_eq!(cvc3_stmt("NAT : TYPE = SUBTYPE(LAMBDA (x : INT) : 0 <= x);").unwrap(), Stmt::DefineType("NAT".into(), vec![]));
        assert_eq!(cvc3_stmt("CHECKSAT;").unwrap(), Stmt::Command("CHECKSAT".into()));
        assert!(matches!(cvc3_stmt("capINT : (ARRAY INT OF BITVECTOR(1), ARRAY INT OF BITVECTOR(1)) -> ARRAY INT OF BITVECTOR(1);").unwrap(), Stmt::Declare(_, Sort::Fun(..))));
    }
}
