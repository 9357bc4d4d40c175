//! Shallow embeddings of typed test specifications into Yices 1 and CVC3 scripts.

mod cvc3;
mod embed;
pub mod term;
mod yices;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ztype::TypedSpec;
pub use term::Sort;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dialect {
    Yices,
    Cvc3,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Yices => "yices",
            Dialect::Cvc3 => "cvc3",
        }
    }

    /// Extension of emitted script files.
    pub fn extension(self) -> &'static str {
        match self {
            Dialect::Yices => "ys",
            Dialect::Cvc3 => "cvc",
        }
    }

    pub fn comment(self) -> &'static str {
        match self {
            Dialect::Yices => ";;",
            Dialect::Cvc3 => "%",
        }
    }

    pub fn parse(s: &str) -> Option<Dialect> {
        match s {
            "yices" => Some(Dialect::Yices),
            "cvc3" => Some(Dialect::Cvc3),
            _ => None,
        }
    }

    /// Renders a sort in this dialect's syntax.
    pub fn sort(self, s: &Sort) -> String {
        match self {
            Dialect::Yices => yices::sort(s),
            Dialect::Cvc3 => cvc3::sort(s),
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentenceKind {
    Header,
    TypeDecl,
    VarDecl,
    AuxDef,
    /// Carrier axioms: finiteness, sequence domains, ℕ bounds, distinct constants.
    Axiom,
    /// The embedding of predicate `i` (zero-based).
    Assert(usize),
    Check,
    ModelRequest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub kind: SentenceKind,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Variable,
    Constant,
    Type,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub emitted: String,
    pub sort: Sort,
    pub kind: SymbolKind,
}

/// Ground values the script talks about, by Z name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScriptUniverse {
    /// Free and basic type name → constants (enum constants; mentioned or variant basic constants).
    pub constants: Vec<(String, Vec<String>)>,
    /// Integer literals of the predicates, in textual order.
    pub ints: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtScript {
    pub dialect: Dialect,
    pub variant: bool,
    pub spec_name: String,
    pub sentences: Vec<Sentence>,
    /// Z name → emitted symbol, for variables, constants and types.
    pub symbols: BTreeMap<String, Symbol>,
    /// Auxiliary definitions in emission order (operators and function coercions).
    pub aux: Vec<String>,
    pub universe: ScriptUniverse,
}

impl SmtScript {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for sentence in &self.sentences {
            s.push_str(&sentence.text);
            s.push('\n');
        }
        s
    }

    pub fn file_name(&self) -> String {
        format!("{}.{}.{}", self.spec_name, self.dialect.name(), self.dialect.extension())
    }

    pub fn asserts(&self) -> impl Iterator<Item = (usize, &Sentence)> {
        self.sentences.iter().filter_map(|s| match s.kind {
            SentenceKind::Assert(i) => Some((i, s)),
            _ => None,
        })
    }

    pub fn emitted(&self, z_name: &str) -> Option<&str> {
        self.symbols.get(z_name).map(|s| s.emitted.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitErrorKind {
    #[error("`{var} : {ty}` has no embedding (synonyms nested inside other types are not supported)")]
    UnsupportedType { var: String, ty: String },
    #[error("no embedding for {0}")]
    UnsupportedPredicate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", match .pred { Some(i) => format!("predicate {}: ", i + 1), None => String::new() })]
pub struct EmitError {
    pub pred: Option<usize>,
    pub kind: EmitErrorKind,
}

/// Embeds a typed spec. `variant` replaces each basic type by a three-constant enumeration.
pub fn emit_script(spec: &TypedSpec, dialect: Dialect, variant: bool) -> Result<SmtScript, Vec<EmitError>> {
    embed::Emitter::new(spec, dialect, variant).run()
}

#[cfg(test)]
mod tests;
