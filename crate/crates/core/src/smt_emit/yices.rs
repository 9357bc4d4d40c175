//! Yices 1 concrete syntax.

use super::term::{Arith, Cmp, Params, Sort, Term};

pub fn sort(s: &Sort) -> String {
    match s {
        Sort::Int => "int".into(),
        Sort::Nat => "nat".into(),
        Sort::Nat1 => "nat1".into(),
        Sort::Bool => "bool".into(),
        Sort::Named(n) => n.clone(),
        Sort::Tuple(xs) => format!("(tuple {})", join(xs.iter().map(sort))),
        Sort::Map(xs, r) | Sort::Fun(xs, r) => format!("(-> {} {})", join(xs.iter().map(sort)), sort(r)),
        Sort::Record(fs) => format!("(record {})", join(fs.iter().map(|(f, s)| format!("{f}::{}", sort(s))))),
    }
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(" ")
}

pub fn params(ps: &Params) -> String {
    format!("({})", join(ps.iter().map(|(n, s)| format!("{n}::{}", sort(s)))))
}

fn app(head: String, args: &[Term]) -> String {
    if args.is_empty() {
        return head;
    }
    format!("({head} {})", join(args.iter().map(term)))
}

pub fn term(t: &Term) -> String {
    match t {
        Term::Sym(s) => s.clone(),
        Term::Int(i) => i.to_string(),
        Term::Bool(b) => b.to_string(),
        Term::Field(x, f) => format!("(select {} {f})", term(x)),
        Term::Read(m, args) | Term::Member(m, args) => app(term(m), args),
        Term::Call(f, args) => app(f.clone(), args),
        Term::Tuple(xs) => app("mk-tuple".into(), xs),
        Term::Proj(x, i) => format!("(select {} {})", term(x), i + 1),
        Term::SetLambda(ps, body) => format!("(lambda {} {})", params(ps), term(body)),
        Term::Not(x) => format!("(not {})", term(x)),
        Term::And(xs) => app("and".into(), xs),
        Term::Or(xs) => app("or".into(), xs),
        Term::Implies(a, b) => format!("(=> {} {})", term(a), term(b)),
        Term::Iff(a, b) => format!("(<=> {} {})", term(a), term(b)),
        Term::Eq(a, b) => format!("(= {} {})", term(a), term(b)),
        Term::Cmp(op, a, b) => {
            let o = match op {
                Cmp::Lt => "<",
                Cmp::Le => "<=",
                Cmp::Gt => ">",
                Cmp::Ge => ">=",
            };
            format!("({o} {} {})", term(a), term(b))
        }
        Term::Arith(op, a, b) => {
            let o = match op {
                Arith::Add => "+",
                Arith::Sub => "-",
                Arith::Mul => "*",
            };
            format!("({o} {} {})", term(a), term(b))
        }
        Term::Ite(c, a, b) => format!("(ite {} {} {})", term(c), term(a), term(b)),
        Term::Forall(ps, body) => format!("(forall {} {})", params(ps), term(body)),
        Term::Exists(ps, body) => format!("(exists {} {})", params(ps), term(body)),
    }
}
