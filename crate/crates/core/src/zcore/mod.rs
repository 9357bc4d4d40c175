//! Shared syntax trees and ground values.

pub mod ast;
pub mod value;

pub use ast::{Expr, Pred, SynKind, TestSpec, TypeDecls, TypeExpr};
pub use value::{canonical_order, value_eq, KindMismatch, Value};
