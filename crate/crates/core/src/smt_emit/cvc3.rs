//! CVC3 presentation-language syntax.
//!
//! Binding strength, loosest first: quantifiers, `<=>`, `=>` (right), `OR`, `AND`,
//! `NOT`, comparisons, `+ -`, `*`, unary minus, postfix `[..]` and `.f`.

use super::term::{Arith, Cmp, Params, Sort, Term};

const IFF: u8 = 1;
const IMPL: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const CMP: u8 = 6;
const ADD: u8 = 7;
const MUL: u8 = 8;
const NEG: u8 = 9;
const POSTFIX: u8 = 10;

pub const BV1: &str = "BITVECTOR(1)";

pub fn sort(s: &Sort) -> String {
    match s {
        Sort::Int => "INT".into(),
        Sort::Nat => "NAT".into(),
        Sort::Nat1 => "NAT1".into(),
        Sort::Bool => "BOOLEAN".into(),
        Sort::Named(n) => n.clone(),
        Sort::Tuple(xs) => format!("[{}]", xs.iter().map(sort).collect::<Vec<_>>().join(", ")),
        Sort::Map(xs, r) => {
            let elem = if **r == Sort::Bool { BV1.to_string() } else { sort(r) };
            format!("ARRAY {} OF {elem}", index_sort(xs))
        }
        Sort::Record(fs) => {
            let body: Vec<String> = fs.iter().map(|(f, s)| format!("{f} : {}", sort(s))).collect();
            format!("[# {} #]", body.join(", "))
        }
        Sort::Fun(xs, r) => {
            format!("({}) -> {}", xs.iter().map(sort).collect::<Vec<_>>().join(", "), sort(r))
        }
    }
}

pub fn index_sort(xs: &[Sort]) -> String {
    match xs {
        [one] => sort(one),
        many => sort(&Sort::Tuple(many.to_vec())),
    }
}

/// `(A, B : S, n : T)`: consecutive binders of one sort share it.
pub fn params(ps: &Params) -> String {
    let mut groups: Vec<(Vec<&str>, &Sort)> = Vec::new();
    for (n, s) in ps {
        match groups.last_mut() {
            Some((names, last)) if *last == s => names.push(n),
            _ => groups.push((vec![n], s)),
        }
    }
    let parts: Vec<String> = groups.iter().map(|(ns, s)| format!("{} : {}", ns.join(", "), sort(s))).collect();
    format!("({})", parts.join(", "))
}

pub fn term(t: &Term) -> String {
    let mut out = String::new();
    write(&mut out, t, 0, true);
    out
}

fn index(out: &mut String, args: &[Term]) {
    out.push('[');
    if let [one] = args {
        write(out, one, 0, true);
    } else {
        write(out, &Term::Tuple(args.to_vec()), 0, true);
    }
    out.push(']');
}

fn list(out: &mut String, items: &[Term]) {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write(out, x, 0, true);
    }
}

/// Writes `t` where the context requires binding strength `ctx`; `tail` is true when
/// nothing follows `t` before the end of the enclosing bracket or statement.
fn write(out: &mut String, t: &Term, ctx: u8, tail: bool) {
    let level = level(t);
    // a quantifier extends as far right as possible, so in tail position it needs no brackets
    let paren = if level == 0 { !tail } else { level < ctx };
    if paren {
        out.push('(');
    }
    let tail = tail || paren;
    match t {
        Term::Sym(s) => out.push_str(s),
        Term::Int(i) => out.push_str(&i.to_string()),
        Term::Bool(b) => out.push_str(if *b { "TRUE" } else { "FALSE" }),
        Term::Field(x, f) => {
            write(out, x, POSTFIX, false);
            out.push('.');
            out.push_str(f);
        }
        Term::Read(m, args) => {
            write(out, m, POSTFIX, false);
            index(out, args);
        }
        Term::Member(m, args) => {
            write(out, m, POSTFIX, false);
            index(out, args);
            out.push_str(" = 0bin1");
        }
        Term::Call(f, args) => {
            out.push_str(f);
            out.push('(');
            list(out, args);
            out.push(')');
        }
        Term::Tuple(xs) => {
            out.push('(');
            list(out, xs);
            out.push(')');
        }
        Term::Proj(x, i) => {
            write(out, x, POSTFIX, false);
            out.push_str(&format!(".{i}"));
        }
        Term::SetLambda(ps, body) => {
            assert!(ps.len() == 1, "CVC3 comprehensions bind one index");
            out.push_str(&format!("(ARRAY {} : ", params(ps)));
            match **body {
                Term::Bool(false) => out.push_str("0bin0"),
                Term::Bool(true) => out.push_str("0bin1"),
                ref b => {
                    out.push_str("IF ");
                    write(out, b, 0, true);
                    out.push_str(" THEN 0bin1 ELSE 0bin0 ENDIF");
                }
            }
            out.push(')');
        }
        Term::Not(x) => {
            out.push_str("NOT ");
            let inner = if level_of_atomish(x) { NOT } else { POSTFIX + 1 };
            write(out, x, inner, tail);
        }
        Term::And(xs) | Term::Or(xs) => {
            let (op, lv) = if matches!(t, Term::And(_)) { (" AND ", AND) } else { (" OR ", OR) };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                write(out, x, lv + 1, tail && i + 1 == xs.len());
            }
        }
        Term::Implies(a, b) => binary(out, a, " => ", b, IMPL + 1, IMPL, tail),
        Term::Iff(a, b) => binary(out, a, " <=> ", b, IFF + 1, IFF + 1, tail),
        Term::Eq(a, b) => binary(out, a, " = ", b, ADD, ADD, tail),
        Term::Cmp(op, a, b) => {
            let o = match op {
                Cmp::Lt => " < ",
                Cmp::Le => " <= ",
                Cmp::Gt => " > ",
                Cmp::Ge => " >= ",
            };
            binary(out, a, o, b, ADD, ADD, tail)
        }
        Term::Arith(op, a, b) => {
            let (o, lv) = match op {
                Arith::Add => (" + ", ADD),
                Arith::Sub => (" - ", ADD),
                Arith::Mul => (" * ", MUL),
            };
            binary(out, a, o, b, lv, lv + 1, tail)
        }
        Term::Ite(c, a, b) => {
            out.push_str("IF ");
            write(out, c, 0, true);
            out.push_str(" THEN ");
            write(out, a, 0, true);
            out.push_str(" ELSE ");
            write(out, b, 0, true);
            out.push_str(" ENDIF");
        }
        Term::Forall(ps, body) | Term::Exists(ps, body) => {
            out.push_str(if matches!(t, Term::Forall(..)) { "FORALL " } else { "EXISTS " });
            out.push_str(&params(ps));
            out.push_str(" : ");
            write(out, body, 0, tail);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Operands of NOT are parenthesized unless atomic, for readability.
fn level_of_atomish(t: &Term) -> bool {
    level(t) >= POSTFIX
}

fn binary(out: &mut String, a: &Term, op: &str, b: &Term, la: u8, lb: u8, tail: bool) {
    write(out, a, la, false);
    out.push_str(op);
    write(out, b, lb, tail);
}

fn level(t: &Term) -> u8 {
    match t {
        Term::Forall(..) | Term::Exists(..) => 0,
        Term::Iff(..) => IFF,
        Term::Implies(..) => IMPL,
        Term::Or(_) => OR,
        Term::And(_) => AND,
        Term::Not(_) => NOT,
        Term::Eq(..) | Term::Cmp(..) | Term::Member(..) => CMP,
        Term::Arith(Arith::Mul, ..) => MUL,
        Term::Arith(..) => ADD,
        Term::Int(i) if *i < 0 => NEG,
        Term::Field(..) | Term::Read(..) | Term::Proj(..) => POSTFIX,
        _ => POSTFIX + 1,
    }
}
