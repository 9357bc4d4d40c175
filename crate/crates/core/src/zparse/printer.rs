//! Deterministic pretty printer; output reparses to the same syntax tree.

use std::fmt::{self, Write};

use super::SourceFile;
use crate::zcore::{Expr, Pred, SynKind, TestSpec, TypeExpr};

// type precedence levels
const T_ARROW: u8 = 0;
const T_PROD: u8 = 1;
const T_UNARY: u8 = 2;
const T_ATOM: u8 = 3;

fn type_level(t: &TypeExpr) -> u8 {
    match t {
        TypeExpr::Synonym(SynKind::Seq | SynKind::Finset, _) | TypeExpr::Power(_) => T_UNARY,
        TypeExpr::Synonym(..) => T_ARROW,
        TypeExpr::Product(..) => T_PROD,
        _ => T_ATOM,
    }
}

pub fn write_type(f: &mut impl Write, t: &TypeExpr, ctx: u8) -> fmt::Result {
    let paren = type_level(t) < ctx;
    if paren {
        f.write_char('(')?;
    }
    match t {
        TypeExpr::Int => f.write_str("INT")?,
        TypeExpr::Nat => f.write_str("NAT")?,
        TypeExpr::Basic(n) | TypeExpr::Free { name: n, .. } => f.write_str(n)?,
        TypeExpr::Product(l, r) => {
            write_type(f, l, T_PROD)?;
            f.write_str(" x ")?;
            write_type(f, r, T_UNARY)?;
        }
        TypeExpr::Power(e) => {
            f.write_str("P ")?;
            write_type(f, e, T_UNARY)?;
        }
        TypeExpr::Synonym(k @ (SynKind::Seq | SynKind::Finset), args) => {
            write!(f, "{} ", k.keyword())?;
            write_type(f, &args[0], T_UNARY)?;
        }
        TypeExpr::Synonym(k, args) => {
            write_type(f, &args[0], T_PROD)?;
            write!(f, " {} ", k.keyword())?;
            write_type(f, &args[1], T_ARROW)?;
        }
    }
    if paren {
        f.write_char(')')?;
    }
    Ok(())
}

// expression precedence levels
const E_MAPLET: u8 = 0;
const E_RANGE: u8 = 1;
const E_ADD: u8 = 2;
const E_MUL: u8 = 3;
const E_PREFIX: u8 = 4;
const E_APP: u8 = 5;
const E_ATOM: u8 = 6;

fn expr_level(e: &Expr) -> u8 {
    match e {
        Expr::Tuple(..) => E_MAPLET,
        Expr::Range(..) => E_RANGE,
        Expr::Add(..) | Expr::Sub(..) | Expr::Union(..) | Expr::Diff(..) => E_ADD,
        Expr::Mul(..) | Expr::Inter(..) => E_MUL,
        Expr::Dom(_) | Expr::Ran(_) | Expr::Card(_) => E_PREFIX,
        Expr::IntLit(v) if *v < 0 => E_PREFIX,
        Expr::Apply(..) => E_APP,
        _ => E_ATOM,
    }
}

pub fn write_expr(f: &mut impl Write, e: &Expr, ctx: u8) -> fmt::Result {
    let paren = expr_level(e) < ctx;
    if paren {
        f.write_char('(')?;
    }
    match e {
        Expr::Var(v) => f.write_str(v)?,
        Expr::IntLit(v) => write!(f, "{v}")?,
        Expr::EnumLit(n) | Expr::BasicLit { name: n, .. } => f.write_str(n)?,
        Expr::Tuple(a, b) => infix(f, "|->", a, E_MAPLET, b, E_RANGE)?,
        Expr::Range(a, b) => infix(f, "..", a, E_ADD, b, E_ADD)?,
        Expr::Add(a, b) => infix(f, "+", a, E_ADD, b, E_MUL)?,
        Expr::Sub(a, b) => infix(f, "-", a, E_ADD, b, E_MUL)?,
        Expr::Union(a, b) => infix(f, "cup", a, E_ADD, b, E_MUL)?,
        Expr::Diff(a, b) => infix(f, "setminus", a, E_ADD, b, E_MUL)?,
        Expr::Mul(a, b) => infix(f, "*", a, E_MUL, b, E_PREFIX)?,
        Expr::Inter(a, b) => infix(f, "cap", a, E_MUL, b, E_PREFIX)?,
        Expr::Apply(a, b) => infix(f, "@", a, E_APP, b, E_ATOM)?,
        Expr::Dom(a) => {
            f.write_str("dom ")?;
            write_expr(f, a, E_PREFIX)?;
        }
        Expr::Ran(a) => {
            f.write_str("ran ")?;
            write_expr(f, a, E_PREFIX)?;
        }
        Expr::Card(a) => {
            f.write_str("# ")?;
            write_expr(f, a, E_PREFIX)?;
        }
        Expr::EmptySet(None) => f.write_str("{}")?,
        Expr::EmptySet(Some(t)) => {
            f.write_str("{}")?;
            write_type(f, t, T_ATOM)?;
        }
        Expr::SetExt(items) => {
            f.write_char('{')?;
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_expr(f, it, E_MAPLET)?;
            }
            f.write_char('}')?;
        }
    }
    if paren {
        f.write_char(')')?;
    }
    Ok(())
}

fn infix(f: &mut impl Write, op: &str, a: &Expr, la: u8, b: &Expr, lb: u8) -> fmt::Result {
    write_expr(f, a, la)?;
    write!(f, " {op} ")?;
    write_expr(f, b, lb)
}

pub fn write_pred(f: &mut impl Write, p: &Pred) -> fmt::Result {
    let (a, b) = p.operands();
    let op = match p {
        Pred::MemberOf(..) => "in",
        Pred::NotMemberOf(..) => "notin",
        Pred::Equal(..) => "=",
        Pred::NotEqual(..) => "/=",
        Pred::SubsetEq(..) | Pred::NotSubsetEq(..) => "subseteq",
        Pred::Lt(..) => "<",
        Pred::Leq(..) => "<=",
        Pred::Gt(..) => ">",
        Pred::Geq(..) => ">=",
    };
    if matches!(p, Pred::NotSubsetEq(..)) {
        f.write_str("not ")?;
    }
    write_expr(f, a, E_MAPLET)?;
    write!(f, " {op} ")?;
    write_expr(f, b, E_MAPLET)
}

/// Renders one spec block.
pub fn pretty_print(spec: &TestSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spec {} {{", spec.name);
    let mut items: Vec<String> = spec.includes.clone();
    for (v, t) in &spec.decls {
        let mut s = format!("{v} : ");
        let _ = write_type(&mut s, t, T_ARROW);
        items.push(s);
    }
    for (i, it) in items.iter().enumerate() {
        let sep = if i + 1 < items.len() { ";" } else { "" };
        let _ = writeln!(out, "  {it}{sep}");
    }
    if !spec.preds.is_empty() {
        out.push_str("|\n");
        for (i, p) in spec.preds.iter().enumerate() {
            let sep = if i + 1 < spec.preds.len() { ";" } else { "" };
            let mut s = String::new();
            let _ = write_pred(&mut s, p);
            let _ = writeln!(out, "  {s}{sep}");
        }
    }
    out.push_str("}\n");
    out
}

/// Renders a whole file: type declarations, then every spec.
pub fn print_file(file: &SourceFile) -> String {
    let mut out = String::new();
    for b in &file.types.basics {
        let _ = writeln!(out, "basic {b};");
    }
    for (n, cs) in &file.types.frees {
        let _ = writeln!(out, "free {n} ::= {};", cs.join(" | "));
    }
    for s in &file.specs {
        out.push('\n');
        out.push_str(&pretty_print(s));
    }
    out
}
