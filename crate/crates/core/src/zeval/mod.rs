//! Ground evaluation of expressions and predicates under a full binding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::zcore::{Expr, Pred, TypeDecls, Value};
use crate::ztype::{admits, Constraint, TypedSpec, Universe};

/// A binding of variable names to ground values.
pub type Env = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{func}` is not defined at {arg}")]
    ApplyOutsideDomain { func: String, arg: Value },
    #[error("`{func}` relates {arg} to more than one value")]
    ApplyNonFunctional { func: String, arg: Value },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("integer overflow")]
    Overflow,
    #[error("expected {expected}, found {found}")]
    Kind { expected: &'static str, found: Value },
}

fn want_int(v: Value) -> Result<i64, EvalError> {
    match v {
        Value::Int(i) => Ok(i),
        other => Err(EvalError::Kind { expected: "an integer", found: other }),
    }
}

fn want_set(v: Value) -> Result<BTreeSet<Value>, EvalError> {
    match v {
        Value::Set(s) => Ok(s),
        other => Err(EvalError::Kind { expected: "a set", found: other }),
    }
}

fn want_pair(v: &Value) -> Result<(&Value, &Value), EvalError> {
    v.as_pair().ok_or_else(|| EvalError::Kind { expected: "a pair", found: v.clone() })
}

pub fn eval_expr(e: &Expr, env: &Env, types: &TypeDecls) -> Result<Value, EvalError> {
    let ev = |x: &Expr| eval_expr(x, env, types);
    let arith = |a: &Expr, b: &Expr, op: fn(i64, i64) -> Option<i64>| -> Result<Value, EvalError> {
        let (a, b) = (want_int(ev(a)?)?, want_int(ev(b)?)?);
        op(a, b).map(Value::Int).ok_or(EvalError::Overflow)
    };
    Ok(match e {
        Expr::Var(v) => env.get(v).cloned().ok_or_else(|| EvalError::Unbound(v.clone()))?,
        Expr::IntLit(i) => Value::Int(*i),
        Expr::EnumLit(c) => {
            let (ty, cs) = types
                .frees
                .iter()
                .find(|(_, cs)| cs.contains(c))
                .ok_or_else(|| EvalError::UnknownConstant(c.clone()))?;
            let ordinal = cs.iter().position(|k| k == c).unwrap() as u32;
            Value::enum_const(ty, c, ordinal)
        }
        Expr::BasicLit { name, type_name } => Value::basic(type_name, name),
        Expr::Tuple(a, b) => Value::pair(ev(a)?, ev(b)?),
        Expr::SetExt(items) => Value::Set(items.iter().map(ev).collect::<Result<_, _>>()?),
        Expr::EmptySet(_) => Value::empty_set(),
        Expr::Range(lo, hi) => {
            let (lo, hi) = (want_int(ev(lo)?)?, want_int(ev(hi)?)?);
            Value::set((lo..=hi).map(Value::Int))
        }
        Expr::Apply(f, x) => {
            let name = match &**f {
                Expr::Var(v) => v.clone(),
                other => other.to_string(),
            };
            let rel = want_set(ev(f)?)?;
            let arg = ev(x)?;
            let mut image = None;
            for p in &rel {
                let (a, b) = want_pair(p)?;
                if *a == arg {
                    if image.is_some() {
                        return Err(EvalError::ApplyNonFunctional { func: name, arg });
                    }
                    image = Some(b.clone());
                }
            }
            image.ok_or(EvalError::ApplyOutsideDomain { func: name, arg })?
        }
        Expr::Dom(r) | Expr::Ran(r) => {
            let rel = want_set(ev(r)?)?;
            let first = matches!(e, Expr::Dom(_));
            let mut out = BTreeSet::new();
            for p in &rel {
                let (a, b) = want_pair(p)?;
                out.insert(if first { a.clone() } else { b.clone() });
            }
            Value::Set(out)
        }
        Expr::Card(s) => Value::Int(want_set(ev(s)?)?.len() as i64),
        Expr::Union(a, b) => {
            let mut s = want_set(ev(a)?)?;
            s.extend(want_set(ev(b)?)?);
            Value::Set(s)
        }
        Expr::Inter(a, b) => {
            let (s, t) = (want_set(ev(a)?)?, want_set(ev(b)?)?);
            Value::Set(s.intersection(&t).cloned().collect())
        }
        Expr::Diff(a, b) => {
            let (s, t) = (want_set(ev(a)?)?, want_set(ev(b)?)?);
            Value::Set(s.difference(&t).cloned().collect())
        }
        Expr::Add(a, b) => arith(a, b, i64::checked_add)?,
        Expr::Sub(a, b) => arith(a, b, i64::checked_sub)?,
        Expr::Mul(a, b) => arith(a, b, i64::checked_mul)?,
    })
}

pub fn eval_pred(p: &Pred, env: &Env, types: &TypeDecls) -> Result<bool, EvalError> {
    let ev = |x: &Expr| eval_expr(x, env, types);
    let cmp = |a: &Expr, b: &Expr| -> Result<(i64, i64), EvalError> {
        Ok((want_int(ev(a)?)?, want_int(ev(b)?)?))
    };
    Ok(match p {
        Pred::MemberOf(a, b) => want_set(ev(b)?)?.contains(&ev(a)?),
        Pred::NotMemberOf(a, b) => !want_set(ev(b)?)?.contains(&ev(a)?),
        Pred::Equal(a, b) => ev(a)? == ev(b)?,
        Pred::NotEqual(a, b) => ev(a)? != ev(b)?,
        Pred::SubsetEq(a, b) => want_set(ev(a)?)?.is_subset(&want_set(ev(b)?)?),
        Pred::NotSubsetEq(a, b) => !want_set(ev(a)?)?.is_subset(&want_set(ev(b)?)?),
        Pred::Lt(a, b) => cmp(a, b).map(|(x, y)| x < y)?,
        Pred::Leq(a, b) => cmp(a, b).map(|(x, y)| x <= y)?,
        Pred::Gt(a, b) => cmp(a, b).map(|(x, y)| x > y)?,
        Pred::Geq(a, b) => cmp(a, b).map(|(x, y)| x >= y)?,
    })
}

/// Where a check stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// The value bound to `var` is outside its declared carrier.
    Carrier { var: String, constraint: Constraint },
    /// Zero-based predicate index.
    Pred(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Carrier { var, constraint } => write!(f, "declaration of `{var}` ({constraint})"),
            Step::Pred(i) => write!(f, "predicate {}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Failed(Step),
    Error(Step, EvalError),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfied => f.write_str("satisfied"),
            Verdict::Failed(step) => write!(f, "failed at {step}"),
            Verdict::Error(step, e) => write!(f, "error at {step}: {e}"),
        }
    }
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }
}

/// Checks a binding against a spec, judging basic-type totality by the constants in `env`.
pub fn check_spec(spec: &TypedSpec, env: &Env) -> Verdict {
    check_spec_in(spec, env, &Universe::from_values(env.values()))
}

/// Checks carriers in declaration order, then predicates in order.
pub fn check_spec_in(spec: &TypedSpec, env: &Env, universe: &Universe) -> Verdict {
    for v in &spec.vars {
        let Some(val) = env.get(&v.name) else {
            let step = Step::Carrier { var: v.name.clone(), constraint: Constraint::WellTyped };
            return Verdict::Error(step, EvalError::Unbound(v.name.clone()));
        };
        if let Err(constraint) = admits(&v.declared, val, universe) {
            return Verdict::Failed(Step::Carrier { var: v.name.clone(), constraint });
        }
    }
    for (i, p) in spec.spec.preds.iter().enumerate() {
        match eval_pred(p, env, &spec.types) {
            Ok(true) => {}
            Ok(false) => return Verdict::Failed(Step::Pred(i)),
            Err(e) => return Verdict::Error(Step::Pred(i), e),
        }
    }
    Verdict::Satisfied
}
