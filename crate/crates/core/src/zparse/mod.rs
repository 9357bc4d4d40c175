//! ASCII surface syntax for test-specification files (`.ztc`).
//!
//! ```text
//! -- line comment
//! basic MDATA;
//! free STATUS ::= normal | failure;
//!
//! spec Example {
//!   now : NAT;
//!   st : STATUS
//! |
//!   st = normal;
//!   1 < now < 3
//! }
//! ```

mod lexer;
mod parser;
pub mod printer;

use std::fmt;

use crate::zcore::{TestSpec, TypeDecls};

pub use printer::{pretty_print, print_file};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("found {found}, expected one of: {}", expected.join(", "))]
    Unexpected { found: String, expected: Vec<String> },
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("integer literal `{0}` out of range")]
    BadInteger(String),
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("duplicate specification `{0}`")]
    DuplicateSpec(String),
    #[error("included specification `{0}` is not defined earlier in the file")]
    UnknownInclude(String),
    #[error("duplicate type or constant `{0}`")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, kind: ParseErrorKind) -> Self {
        ParseError { line: pos.line, col: pos.col, kind }
    }
}

/// A parsed `.ztc` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub path: Option<String>,
    pub types: TypeDecls,
    pub specs: Vec<TestSpec>,
}

impl SourceFile {
    pub fn spec(&self, name: &str) -> Option<&TestSpec> {
        self.specs.iter().find(|s| s.name == name)
    }

    /// The named spec with every included schema merged in (included parts first).
    pub fn flatten(&self, name: &str) -> Option<TestSpec> {
        let spec = self.spec(name)?;
        let mut out = TestSpec::new(&spec.name);
        for inc in &spec.includes {
            let inner = self.flatten(inc)?;
            for d in inner.decls {
                if !out.decls.iter().any(|(v, _)| *v == d.0) {
                    out.decls.push(d);
                }
            }
            out.preds.extend(inner.preds);
        }
        out.decls.extend(spec.decls.iter().cloned());
        out.preds.extend(spec.preds.iter().cloned());
        Some(out)
    }

    /// All specs, flattened.
    pub fn flattened(&self) -> Vec<TestSpec> {
        self.specs.iter().filter_map(|s| self.flatten(&s.name)).collect()
    }
}

impl fmt::Display for SourceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_file(self))
    }
}

/// Parses a whole `.ztc` file.
pub fn parse_file(text: &str) -> Result<SourceFile, ParseError> {
    let toks = lexer::tokenize(text)?;
    parser::Parser::new(toks).file()
}

#[cfg(test)]
mod tests;
