use std::collections::BTreeSet;

use thiserror::Error;

use super::{normalize, variable_constraints, PredOp, TExpr, TKind, TPred, TypedSpec, VarInfo};
use crate::zcore::{Expr, Pred, SynKind, TestSpec, TypeDecls, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeErrorKind {
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: TypeExpr, found: TypeExpr },
    #[error("`{0}` is not a declared function and cannot be applied")]
    ApplyOnNonFunction(String),
    #[error("cardinality of `{0}` is not known to be finite")]
    CardOnNonFinset(String),
    #[error("cannot infer the type of `{0}`")]
    CannotInfer(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("unknown or ill-formed type `{0}`")]
    UnknownType(String),
    #[error("expected a set, found {0}")]
    NotASet(TypeExpr),
    #[error("expected a relation, found {0}")]
    NotARelation(TypeExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", match .pred { Some(i) => format!("predicate {}: ", i + 1), None => "declarations: ".to_string() })]
pub struct TypeError {
    /// Zero-based index of the offending predicate; `None` for declaration errors.
    pub pred: Option<usize>,
    pub kind: TypeErrorKind,
}

type Result<T> = std::result::Result<T, TypeErrorKind>;

/// Type checks an include-flattened specification.
pub fn typecheck(spec: &TestSpec, types: &TypeDecls) -> std::result::Result<TypedSpec, TypeError> {
    let decl_err = |kind| TypeError { pred: None, kind };
    let mut vars = Vec::new();
    let mut seen = BTreeSet::new();
    for (name, ty) in &spec.decls {
        if !seen.insert(name.as_str()) {
            continue;
        }
        check_declared(ty, types).map_err(decl_err)?;
        vars.push(VarInfo {
            name: name.clone(),
            declared: ty.clone(),
            normalized: normalize(ty),
            constraints: variable_constraints(ty),
        });
    }
    let cx = Ctx { vars: &vars, types };
    let mut preds = Vec::new();
    let mut warnings = Vec::new();
    let mut guards: Vec<(&Expr, &str)> = Vec::new();
    for (i, p) in spec.preds.iter().enumerate() {
        let tp = cx.pred(p).map_err(|kind| TypeError { pred: Some(i), kind })?;
        let (l, r) = p.operands();
        for e in [l, r] {
            e.walk(&mut |sub| {
                if let Expr::Apply(f, x) = sub {
                    if let Expr::Var(f) = &**f {
                        let total = matches!(cx.declared(f), Some(TypeExpr::Synonym(SynKind::Fun, _)));
                        if !total && !guards.iter().any(|(g, gf)| *g == &**x && gf == f) {
                            warnings.push(format!(
                                "predicate {}: `{sub}` is applied without a preceding `{x} in dom {f}`",
                                i + 1
                            ));
                        }
                    }
                }
            });
        }
        if let Pred::MemberOf(x, Expr::Dom(f)) = p {
            if let Expr::Var(f) = &**f {
                guards.push((x, f));
            }
        }
        preds.push(tp);
    }
    Ok(TypedSpec { spec: spec.clone(), types: types.clone(), vars, preds, warnings })
}

fn check_declared(t: &TypeExpr, types: &TypeDecls) -> Result<()> {
    let bad = || TypeErrorKind::UnknownType(t.to_string());
    if !t.well_formed() {
        return Err(bad());
    }
    match t {
        TypeExpr::Int | TypeExpr::Nat => Ok(()),
        TypeExpr::Basic(b) => if types.is_basic(b) { Ok(()) } else { Err(bad()) },
        TypeExpr::Free { name, .. } => {
            if types.free_type(name).as_ref() == Some(t) { Ok(()) } else { Err(bad()) }
        }
        TypeExpr::Product(l, r) => {
            check_declared(l, types)?;
            check_declared(r, types)
        }
        TypeExpr::Power(e) => check_declared(e, types),
        TypeExpr::Synonym(_, args) => args.iter().try_for_each(|a| check_declared(a, types)),
    }
}

struct Ctx<'a> {
    vars: &'a [VarInfo],
    types: &'a TypeDecls,
}

fn set_elem(t: &TypeExpr) -> Result<TypeExpr> {
    match t {
        TypeExpr::Power(e) => Ok((**e).clone()),
        other => Err(TypeErrorKind::NotASet(other.clone())),
    }
}

fn rel_parts(t: &TypeExpr) -> Result<(TypeExpr, TypeExpr)> {
    match set_elem(t)? {
        TypeExpr::Product(a, b) => Ok((*a, *b)),
        _ => Err(TypeErrorKind::NotARelation(t.clone())),
    }
}

fn expect(expected: Option<&TypeExpr>, e: TExpr) -> Result<TExpr> {
    match expected {
        Some(t) if *t != e.ty => Err(TypeErrorKind::Mismatch { expected: t.clone(), found: e.ty }),
        _ => Ok(e),
    }
}

fn texpr(kind: TKind, ty: TypeExpr) -> TExpr {
    TExpr { kind, ty }
}

impl<'a> Ctx<'a> {
    fn declared(&self, name: &str) -> Option<&'a TypeExpr> {
        self.vars.iter().find(|v| v.name == name).map(|v| &v.declared)
    }

    fn pred(&self, p: &Pred) -> Result<TPred> {
        let int = TypeExpr::Int;
        let (op, lhs, rhs) = match p {
            Pred::MemberOf(a, b) | Pred::NotMemberOf(a, b) => {
                let (lhs, rhs) = match self.infer(b, None) {
                    Ok(rhs) => (self.infer(a, Some(&set_elem(&rhs.ty)?))?, rhs),
                    Err(TypeErrorKind::CannotInfer(_)) => {
                        let lhs = self.infer(a, None)?;
                        let rhs = self.infer(b, Some(&TypeExpr::power(lhs.ty.clone())))?;
                        (lhs, rhs)
                    }
                    Err(e) => return Err(e),
                };
                let op = if matches!(p, Pred::MemberOf(..)) { PredOp::Member } else { PredOp::NotMember };
                (op, lhs, rhs)
            }
            Pred::Equal(a, b) | Pred::NotEqual(a, b) | Pred::SubsetEq(a, b) | Pred::NotSubsetEq(a, b) => {
                let (lhs, rhs) = self.same(a, b, None)?;
                let op = match p {
                    Pred::Equal(..) => PredOp::Eq,
                    Pred::NotEqual(..) => PredOp::Neq,
                    Pred::SubsetEq(..) => PredOp::Subset,
                    _ => PredOp::NotSubset,
                };
                if matches!(op, PredOp::Subset | PredOp::NotSubset) {
                    set_elem(&lhs.ty)?;
                }
                (op, lhs, rhs)
            }
            Pred::Lt(a, b) | Pred::Leq(a, b) | Pred::Gt(a, b) | Pred::Geq(a, b) => {
                let op = match p {
                    Pred::Lt(..) => PredOp::Lt,
                    Pred::Leq(..) => PredOp::Le,
                    Pred::Gt(..) => PredOp::Gt,
                    _ => PredOp::Ge,
                };
                (op, self.infer(a, Some(&int))?, self.infer(b, Some(&int))?)
            }
        };
        Ok(TPred { op, lhs, rhs })
    }

    /// Checks two operands against one common type, inferring from whichever side can be.
    fn same(&self, a: &Expr, b: &Expr, expected: Option<&TypeExpr>) -> Result<(TExpr, TExpr)> {
        if expected.is_some() {
            return Ok((self.infer(a, expected)?, self.infer(b, expected)?));
        }
        match self.infer(a, None) {
            Ok(l) => {
                let r = self.infer(b, Some(&l.ty))?;
                Ok((l, r))
            }
            Err(TypeErrorKind::CannotInfer(_)) => {
                let r = self.infer(b, None)?;
                let l = self.infer(a, Some(&r.ty))?;
                Ok((l, r))
            }
            Err(e) => Err(e),
        }
    }

    fn infer(&self, e: &Expr, expected: Option<&TypeExpr>) -> Result<TExpr> {
        let int = TypeExpr::Int;
        let boxed = Box::new;
        let t = match e {
            Expr::Var(v) => {
                let info = self
                    .vars
                    .iter()
                    .find(|i| &i.name == v)
                    .ok_or_else(|| TypeErrorKind::UndeclaredVariable(v.clone()))?;
                texpr(TKind::Var(v.clone()), info.normalized.clone())
            }
            Expr::IntLit(i) => texpr(TKind::Int(*i), int),
            Expr::EnumLit(c) => {
                let ty = self
                    .types
                    .type_of_constant(c)
                    .ok_or_else(|| TypeErrorKind::UnknownConstant(c.clone()))?;
                let TypeExpr::Free { name, constants } = &ty else { unreachable!() };
                let ordinal = constants.iter().position(|k| k == c).unwrap() as u32;
                let kind = TKind::Enum { name: c.clone(), type_name: name.clone(), ordinal };
                texpr(kind, ty)
            }
            Expr::BasicLit { name, type_name } => {
                if !self.types.is_basic(type_name) {
                    return Err(TypeErrorKind::UnknownConstant(name.clone()));
                }
                let kind = TKind::Basic { name: name.clone(), type_name: type_name.clone() };
                texpr(kind, TypeExpr::Basic(type_name.clone()))
            }
            Expr::Tuple(a, b) => {
                let (ea, eb) = match expected {
                    Some(TypeExpr::Product(l, r)) => (Some(&**l), Some(&**r)),
                    _ => (None, None),
                };
                let a = self.infer(a, ea)?;
                let b = self.infer(b, eb)?;
                let ty = TypeExpr::product(a.ty.clone(), b.ty.clone());
                texpr(TKind::Tuple(boxed(a), boxed(b)), ty)
            }
            Expr::SetExt(items) if items.is_empty() => return self.infer(&Expr::EmptySet(None), expected),
            Expr::SetExt(items) => {
                let elem = match expected {
                    Some(t) => Some(set_elem(t)?),
                    None => None,
                };
                let mut out = Vec::with_capacity(items.len());
                let mut elem = elem;
                for it in items {
                    let te = self.infer(it, elem.as_ref())?;
                    elem.get_or_insert_with(|| te.ty.clone());
                    out.push(te);
                }
                texpr(TKind::SetExt(out), TypeExpr::power(elem.unwrap()))
            }
            Expr::Range(lo, hi) => {
                let lo = self.infer(lo, Some(&int))?;
                let hi = self.infer(hi, Some(&int))?;
                texpr(TKind::Range(boxed(lo), boxed(hi)), TypeExpr::power(int))
            }
            Expr::EmptySet(Some(t)) => {
                check_declared(t, self.types)?;
                texpr(TKind::EmptySet, TypeExpr::power(normalize(t)))
            }
            Expr::EmptySet(None) => match expected {
                Some(t) => {
                    set_elem(t)?;
                    texpr(TKind::EmptySet, t.clone())
                }
                None => return Err(TypeErrorKind::CannotInfer(e.to_string())),
            },
            Expr::Apply(f, x) => {
                let Expr::Var(name) = &**f else {
                    return Err(TypeErrorKind::ApplyOnNonFunction(f.to_string()));
                };
                let (dom, ran) = match self.declared(name) {
                    Some(TypeExpr::Synonym(SynKind::Seq, args)) => (TypeExpr::Int, normalize(&args[0])),
                    Some(TypeExpr::Synonym(k, args)) if k.is_function() => {
                        (normalize(&args[0]), normalize(&args[1]))
                    }
                    Some(_) => return Err(TypeErrorKind::ApplyOnNonFunction(name.clone())),
                    None => return Err(TypeErrorKind::UndeclaredVariable(name.clone())),
                };
                let arg = self.infer(x, Some(&dom))?;
                texpr(TKind::Apply { func: name.clone(), arg: boxed(arg) }, ran)
            }
            Expr::Dom(r) | Expr::Ran(r) => {
                let inner = self.infer(r, None)?;
                let (x, y) = rel_parts(&inner.ty)?;
                if matches!(e, Expr::Dom(_)) {
                    texpr(TKind::Dom(boxed(inner)), TypeExpr::power(x))
                } else {
                    texpr(TKind::Ran(boxed(inner)), TypeExpr::power(y))
                }
            }
            Expr::Card(s) => {
                let finite = match &**s {
                    Expr::Var(v) => matches!(
                        self.declared(v),
                        Some(TypeExpr::Synonym(SynKind::Finset | SynKind::Ffun | SynKind::Seq, _))
                    ),
                    Expr::SetExt(_) | Expr::Range(..) | Expr::EmptySet(_) => true,
                    _ => false,
                };
                if !finite {
                    if let Expr::Var(v) = &**s {
                        if self.declared(v).is_none() {
                            return Err(TypeErrorKind::UndeclaredVariable(v.clone()));
                        }
                    }
                    return Err(TypeErrorKind::CardOnNonFinset(s.to_string()));
                }
                let inner = match self.infer(s, None) {
                    Err(TypeErrorKind::CannotInfer(_)) if matches!(**s, Expr::EmptySet(None)) => {
                        texpr(TKind::EmptySet, TypeExpr::power(TypeExpr::Int))
                    }
                    r => r?,
                };
                set_elem(&inner.ty)?;
                texpr(TKind::Card(boxed(inner)), int)
            }
            Expr::Union(a, b) | Expr::Inter(a, b) | Expr::Diff(a, b) => {
                let (l, r) = self.same(a, b, expected)?;
                set_elem(&l.ty)?;
                let ty = l.ty.clone();
                let kind = match e {
                    Expr::Union(..) => TKind::Union(boxed(l), boxed(r)),
                    Expr::Inter(..) => TKind::Inter(boxed(l), boxed(r)),
                    _ => TKind::Diff(boxed(l), boxed(r)),
                };
                texpr(kind, ty)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                let l = boxed(self.infer(a, Some(&int))?);
                let r = boxed(self.infer(b, Some(&int))?);
                let kind = match e {
                    Expr::Add(..) => TKind::Add(l, r),
                    Expr::Sub(..) => TKind::Sub(l, r),
                    _ => TKind::Mul(l, r),
                };
                texpr(kind, int)
            }
        };
        expect(expected, t)
    }
}
