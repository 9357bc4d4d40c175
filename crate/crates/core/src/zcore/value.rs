//! Ground Z values.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::ast::Expr;

/// A ground value: integers, enum and basic-type constants, pairs and finite sets.
///
/// Sets are kept in canonical order (see [`Ord`] below), so equal sets have identical
/// representations and structural equality is extensional equality.
#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    /// Free-type constant; `ordinal` is its position in the free type declaration.
    Enum { ty: String, name: String, ordinal: u32 },
    Basic { ty: String, name: String },
    Tuple(Box<Value>, Box<Value>),
    Set(BTreeSet<Value>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot compare values of different kinds: {left} and {right}")]
pub struct KindMismatch {
    pub left: String,
    pub right: String,
}

impl Value {
    pub fn enum_const(ty: &str, name: &str, ordinal: u32) -> Value {
        Value::Enum { ty: ty.to_string(), name: name.to_string(), ordinal }
    }

    pub fn basic(ty: &str, name: &str) -> Value {
        Value::Basic { ty: ty.to_string(), name: name.to_string() }
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Tuple(Box::new(a), Box::new(b))
    }

    pub fn set<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::Set(items.into_iter().collect())
    }

    pub fn empty_set() -> Value {
        Value::Set(BTreeSet::new())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<Value>> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Tuple(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Int(_) => 0,
            Value::Enum { .. } => 1,
            Value::Basic { .. } => 2,
            Value::Tuple(..) => 3,
            Value::Set(_) => 4,
        }
    }

    fn kind_name(&self) -> String {
        match self {
            Value::Int(_) => "integer".into(),
            Value::Enum { ty, .. } => format!("constant of {ty}"),
            Value::Basic { ty, .. } => format!("element of {ty}"),
            Value::Tuple(..) => "pair".into(),
            Value::Set(_) => "set".into(),
        }
    }

    /// Whether two values could inhabit the same Z type.
    pub fn same_kind(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(_), Value::Int(_)) => true,
            (Value::Enum { ty: a, .. }, Value::Enum { ty: b, .. })
            | (Value::Basic { ty: a, .. }, Value::Basic { ty: b, .. }) => a == b,
            (Value::Tuple(a1, b1), Value::Tuple(a2, b2)) => a1.same_kind(a2) && b1.same_kind(b2),
            (Value::Set(s), Value::Set(t)) => match s.iter().chain(t.iter()).next() {
                None => true,
                Some(first) => s.iter().chain(t.iter()).all(|v| v.same_kind(first)),
            },
            _ => false,
        }
    }

    /// Converts the value back into a closed expression.
    pub fn to_expr(&self) -> Expr {
        match self {
            Value::Int(i) => Expr::IntLit(*i),
            Value::Enum { name, .. } => Expr::EnumLit(name.clone()),
            Value::Basic { ty, name } => Expr::BasicLit { name: name.clone(), type_name: ty.clone() },
            Value::Tuple(a, b) => Expr::maplet(a.to_expr(), b.to_expr()),
            Value::Set(s) if s.is_empty() => Expr::EmptySet(None),
            Value::Set(s) => Expr::SetExt(s.iter().map(Value::to_expr).collect()),
        }
    }
}

/// Extensional equality.
pub fn value_eq(a: &Value, b: &Value) -> bool {
    a == b
}

/// Canonical total order on values of the same type.
///
/// Integers numerically, enum constants by declaration order, basic constants by name,
/// pairs lexicographically, sets by cardinality and then lexicographically.
pub fn canonical_order(a: &Value, b: &Value) -> Result<Ordering, KindMismatch> {
    if !a.same_kind(b) {
        return Err(KindMismatch { left: a.kind_name(), right: b.kind_name() });
    }
    Ok(a.cmp(b))
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (
                Value::Enum { ty: t1, name: n1, ordinal: o1 },
                Value::Enum { ty: t2, name: n2, ordinal: o2 },
            ) => o1.cmp(o2).then_with(|| n1.cmp(n2)).then_with(|| t1.cmp(t2)),
            (Value::Basic { ty: t1, name: n1 }, Value::Basic { ty: t2, name: n2 }) => {
                n1.cmp(n2).then_with(|| t1.cmp(t2))
            }
            (Value::Tuple(a1, b1), Value::Tuple(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
            (Value::Set(s), Value::Set(t)) => s.len().cmp(&t.len()).then_with(|| s.iter().cmp(t.iter())),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl std::hash::Hash for Value {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Value::Int(i) => i.hash(state),
            Value::Enum { ty, name, ordinal } => {
                ty.hash(state);
                name.hash(state);
                ordinal.hash(state);
            }
            Value::Basic { ty, name } => {
                ty.hash(state);
                name.hash(state);
            }
            Value::Tuple(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            Value::Set(s) => {
                s.len().hash(state);
                for v in s {
                    v.hash(state);
                }
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
