use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::zcore::{SynKind, TypeExpr, Value};

/// Defining predicates of the toolkit synonyms, plus ℕ's lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Functional,
    TotalDom,
    FiniteDom,
    ContiguousDom1toN,
    Finite,
    NonNegative,
    /// The value has the shape of the declared type at all.
    WellTyped,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::Functional => "functional",
            Constraint::TotalDom => "total domain",
            Constraint::FiniteDom => "finite domain",
            Constraint::ContiguousDom1toN => "domain 1..n",
            Constraint::Finite => "finite",
            Constraint::NonNegative => "non-negative",
            Constraint::WellTyped => "well typed",
        };
        f.write_str(s)
    }
}

/// Constraints contributed by the outermost synonym of a declared type.
pub fn carrier_constraints(t: &TypeExpr) -> Vec<Constraint> {
    use Constraint::*;
    match t {
        TypeExpr::Synonym(SynKind::Pfun, _) => vec![Functional],
        TypeExpr::Synonym(SynKind::Fun, _) => vec![Functional, TotalDom],
        TypeExpr::Synonym(SynKind::Ffun, _) => vec![Functional, FiniteDom],
        TypeExpr::Synonym(SynKind::Seq, _) => vec![Functional, FiniteDom, ContiguousDom1toN],
        TypeExpr::Synonym(SynKind::Finset, _) => vec![Finite],
        _ => vec![],
    }
}

/// Everything a value of declared type `t` must satisfy beyond its normalized type.
pub fn variable_constraints(t: &TypeExpr) -> Vec<Constraint> {
    let mut c = carrier_constraints(t);
    if t.contains_nat() {
        c.push(Constraint::NonNegative);
    }
    c
}

/// The elements assumed to make up each basic type.
///
/// Basic types are uninterpreted; totality of a function over one is judged against
/// this finite stand-in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Universe {
    basics: BTreeMap<String, BTreeSet<String>>,
}

impl Universe {
    /// `ty1 … tyN` for every basic type, as generated by the finite-model search.
    pub fn fresh(basic_types: &[String], size: usize) -> Self {
        let basics = basic_types
            .iter()
            .map(|b| (b.clone(), (1..=size).map(|i| format!("{b}{i}")).collect()))
            .collect();
        Universe { basics }
    }

    /// Every basic constant mentioned anywhere in the given values.
    pub fn from_values<'a>(values: impl IntoIterator<Item = &'a Value>) -> Self {
        fn collect(v: &Value, out: &mut BTreeMap<String, BTreeSet<String>>) {
            match v {
                Value::Basic { ty, name } => {
                    out.entry(ty.clone()).or_default().insert(name.clone());
                }
                Value::Tuple(a, b) => {
                    collect(a, out);
                    collect(b, out);
                }
                Value::Set(s) => s.iter().for_each(|x| collect(x, out)),
                Value::Int(_) | Value::Enum { .. } => {}
            }
        }
        let mut basics = BTreeMap::new();
        for v in values {
            collect(v, &mut basics);
        }
        Universe { basics }
    }

    pub fn basic_constants(&self, ty: &str) -> Vec<Value> {
        self.basics
            .get(ty)
            .map(|names| names.iter().map(|n| Value::basic(ty, n)).collect())
            .unwrap_or_default()
    }

    /// All values of a type when that set is finite under this universe.
    pub fn enumerate(&self, t: &TypeExpr) -> Option<Vec<Value>> {
        match t {
            TypeExpr::Free { name, constants } => Some(
                constants
                    .iter()
                    .enumerate()
                    .map(|(i, c)| Value::enum_const(name, c, i as u32))
                    .collect(),
            ),
            TypeExpr::Basic(b) => Some(self.basic_constants(b)),
            TypeExpr::Product(l, r) => {
                let ls = self.enumerate(l)?;
                let rs = self.enumerate(r)?;
                Some(
                    ls.iter()
                        .flat_map(|a| rs.iter().map(move |b| Value::pair(a.clone(), b.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }
}

/// Checks that `v` belongs to the carrier set of the declared type `t`.
pub fn admits(t: &TypeExpr, v: &Value, universe: &Universe) -> Result<(), Constraint> {
    use Constraint::*;
    match (t, v) {
        (TypeExpr::Int, Value::Int(_)) => Ok(()),
        (TypeExpr::Nat, Value::Int(i)) => if *i >= 0 { Ok(()) } else { Err(NonNegative) },
        (TypeExpr::Basic(b), Value::Basic { ty, .. }) if b == ty => Ok(()),
        (TypeExpr::Free { name, constants }, Value::Enum { ty, name: c, ordinal }) => {
            let ok = ty == name && constants.get(*ordinal as usize) == Some(c);
            if ok { Ok(()) } else { Err(WellTyped) }
        }
        (TypeExpr::Product(l, r), Value::Tuple(a, b)) => {
            admits(l, a, universe)?;
            admits(r, b, universe)
        }
        (TypeExpr::Power(e), Value::Set(s)) => s.iter().try_for_each(|x| admits(e, x, universe)),
        (TypeExpr::Synonym(SynKind::Finset, args), Value::Set(s)) => {
            s.iter().try_for_each(|x| admits(&args[0], x, universe))
        }
        (TypeExpr::Synonym(SynKind::Seq, args), Value::Set(s)) => {
            let pairs = pairs_of(s)?;
            for (i, x) in &pairs {
                if !matches!(i, Value::Int(_)) {
                    return Err(WellTyped);
                }
                admits(&args[0], x, universe)?;
            }
            functional(&pairs)?;
            let expected: BTreeSet<Value> = (1..=pairs.len() as i64).map(Value::Int).collect();
            let dom: BTreeSet<Value> = pairs.iter().map(|(i, _)| (*i).clone()).collect();
            if dom == expected { Ok(()) } else { Err(ContiguousDom1toN) }
        }
        (TypeExpr::Synonym(kind, args), Value::Set(s)) => {
            let pairs = pairs_of(s)?;
            for (x, y) in &pairs {
                admits(&args[0], x, universe)?;
                admits(&args[1], y, universe)?;
            }
            if *kind == SynKind::Rel {
                return Ok(());
            }
            functional(&pairs)?;
            if *kind == SynKind::Fun {
                let dom: BTreeSet<&Value> = pairs.iter().map(|(x, _)| *x).collect();
                let all = universe.enumerate(&args[0]).ok_or(TotalDom)?;
                if dom.len() != all.len() || !all.iter().all(|x| dom.contains(x)) {
                    return Err(TotalDom);
                }
            }
            Ok(())
        }
        _ => Err(WellTyped),
    }
}

fn pairs_of(s: &BTreeSet<Value>) -> Result<Vec<(&Value, &Value)>, Constraint> {
    s.iter().map(|p| p.as_pair().ok_or(Constraint::WellTyped)).collect()
}

fn functional(pairs: &[(&Value, &Value)]) -> Result<(), Constraint> {
    // pairs are sorted, so equal first components are adjacent
    if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        Err(Constraint::Functional)
    } else {
        Ok(())
    }
}
