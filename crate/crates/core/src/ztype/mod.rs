//! Type checking against Z's type system, and expansion of toolkit synonyms.

mod carrier;
mod check;

pub use carrier::{admits, carrier_constraints, variable_constraints, Constraint, Universe};
pub use check::{typecheck, TypeError, TypeErrorKind};

use crate::zcore::{SynKind, TestSpec, TypeDecls, TypeExpr};

/// Expands synonyms to their maximal type and relaxes ℕ to ℤ.
///
/// `X rel Y`, `X pfun Y`, `X fun Y`, `X ffun Y` become `P (X x Y)`, `seq X` becomes
/// `P (INT x X)` and `fset X` becomes `P X`. The result is a fixed point.
pub fn normalize(t: &TypeExpr) -> TypeExpr {
    match t {
        TypeExpr::Int | TypeExpr::Nat => TypeExpr::Int,
        TypeExpr::Basic(_) | TypeExpr::Free { .. } => t.clone(),
        TypeExpr::Product(l, r) => TypeExpr::product(normalize(l), normalize(r)),
        TypeExpr::Power(e) => TypeExpr::power(normalize(e)),
        TypeExpr::Synonym(SynKind::Seq, args) => {
            TypeExpr::power(TypeExpr::product(TypeExpr::Int, normalize(&args[0])))
        }
        TypeExpr::Synonym(SynKind::Finset, args) => TypeExpr::power(normalize(&args[0])),
        TypeExpr::Synonym(_, args) => {
            TypeExpr::power(TypeExpr::product(normalize(&args[0]), normalize(&args[1])))
        }
    }
}

/// A type-annotated expression; `ty` is always normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TExpr {
    pub kind: TKind,
    pub ty: TypeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TKind {
    Var(String),
    Int(i64),
    Enum { name: String, type_name: String, ordinal: u32 },
    Basic { name: String, type_name: String },
    Tuple(Box<TExpr>, Box<TExpr>),
    SetExt(Vec<TExpr>),
    Range(Box<TExpr>, Box<TExpr>),
    EmptySet,
    /// Application of a declared function-typed variable.
    Apply { func: String, arg: Box<TExpr> },
    Dom(Box<TExpr>),
    Ran(Box<TExpr>),
    Card(Box<TExpr>),
    Union(Box<TExpr>, Box<TExpr>),
    Inter(Box<TExpr>, Box<TExpr>),
    Diff(Box<TExpr>, Box<TExpr>),
    Add(Box<TExpr>, Box<TExpr>),
    Sub(Box<TExpr>, Box<TExpr>),
    Mul(Box<TExpr>, Box<TExpr>),
}

impl TExpr {
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TExpr)) {
        f(self);
        match &self.kind {
            TKind::Var(_) | TKind::Int(_) | TKind::Enum { .. } | TKind::Basic { .. } | TKind::EmptySet => {}
            TKind::SetExt(items) => items.iter().for_each(|i| i.walk(f)),
            TKind::Apply { arg, .. } => arg.walk(f),
            TKind::Dom(e) | TKind::Ran(e) | TKind::Card(e) => e.walk(f),
            TKind::Tuple(a, b)
            | TKind::Range(a, b)
            | TKind::Union(a, b)
            | TKind::Inter(a, b)
            | TKind::Diff(a, b)
            | TKind::Add(a, b)
            | TKind::Sub(a, b)
            | TKind::Mul(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredOp {
    Member,
    NotMember,
    Eq,
    Neq,
    Subset,
    NotSubset,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPred {
    pub op: PredOp,
    pub lhs: TExpr,
    pub rhs: TExpr,
}

/// A declared variable after type checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    /// As written, synonyms kept.
    pub declared: TypeExpr,
    pub normalized: TypeExpr,
    pub constraints: Vec<Constraint>,
}

/// A type-checked, include-flattened test specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedSpec {
    pub spec: TestSpec,
    pub types: TypeDecls,
    pub vars: Vec<VarInfo>,
    pub preds: Vec<TPred>,
    /// Non-fatal diagnostics, e.g. partial-function applications without a domain guard.
    pub warnings: Vec<String>,
}

impl TypedSpec {
    pub fn var(&self, name: &str) -> Option<&VarInfo> {
        self.vars.iter().find(|v| v.name == name)
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pfun_relaxes_nat() {
        let t = TypeExpr::pfun(TypeExpr::basic("REVENT"), TypeExpr::Nat);
        assert_eq!(normalize(&t), TypeExpr::power(TypeExpr::product(TypeExpr::basic("REVENT"), TypeExpr::Int)));
    }

    #[test]
    fn power_int_is_fixed() {
        let t = TypeExpr::power(TypeExpr::Int);
        assert_eq!(normalize(&t), t);
    }

    #[test]
    fn seq_unfolds_to_indexed_pairs() {
        // seq X = N ffun X ⊆ N pfun X ⊆ N rel X = P (N x X), with N relaxed to Z
        let chain = normalize(&TypeExpr::ffun(TypeExpr::Nat, TypeExpr::basic("MDATA")));
        assert_eq!(normalize(&TypeExpr::seq(TypeExpr::basic("MDATA"))), chain);
        assert_eq!(chain, TypeExpr::power(TypeExpr::product(TypeExpr::Int, TypeExpr::basic("MDATA"))));
    }

    fn has_synonym(t: &TypeExpr) -> bool {
        match t {
            TypeExpr::Synonym(..) | TypeExpr::Nat => true,
            TypeExpr::Product(l, r) => has_synonym(l) || has_synonym(r),
            TypeExpr::Power(e) => has_synonym(e),
            _ => false,
        }
    }

    pub(crate) fn arb_type() -> impl Strategy<Value = TypeExpr> {
        let leaf = prop_oneof![
            Just(TypeExpr::Int),
            Just(TypeExpr::Nat),
            Just(TypeExpr::basic("B")),
            Just(TypeExpr::free("F", &["a", "b"])),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| TypeExpr::product(a, b)),
                inner.clone().prop_map(TypeExpr::power),
                inner.clone().prop_map(TypeExpr::seq),
                inner.clone().prop_map(TypeExpr::finset),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| TypeExpr::rel(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| TypeExpr::pfun(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| TypeExpr::fun(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_synonym_free(t in arb_type()) {
            let n = normalize(&t);
            prop_assert!(!has_synonym(&n));
            prop_assert_eq!(normalize(&n), n);
        }
    }
}
