#![allow(dead_code)]

use std::path::{Path, PathBuf};

use ztc::fms::{search, SearchConfig, SearchResult};
use ztc::zcore::TypeExpr;
use ztc::zeval::Env;
use ztc::zparse::parse_file;
use ztc::ztype::{typecheck, TypedSpec};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(root().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ztc"))
        .collect();
    files.sort();
    files
}

/// Every corpus spec, flattened and type-checked.
pub fn corpus() -> Vec<TypedSpec> {
    let mut out = Vec::new();
    for f in corpus_files() {
        let src = parse_file(&std::fs::read_to_string(&f).unwrap()).unwrap();
        for s in src.flattened() {
            out.push(typecheck(&s, &src.types).unwrap_or_else(|e| panic!("{}: {e}", s.name)));
        }
    }
    out
}

pub fn corpus_spec(name: &str) -> TypedSpec {
    corpus().into_iter().find(|s| s.name() == name).unwrap()
}

/// Corpus specs with a witness from the default search. A spec the search caps or
/// exhausts borrows the witness of a test-case schema that extends it, when there is one.
pub fn known_witnesses() -> Vec<(TypedSpec, Env)> {
    let specs = corpus();
    let found: Vec<Option<Env>> = specs
        .iter()
        .map(|s| match search(s, &SearchConfig::default()).result {
            SearchResult::Witness(env) => Some(env),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for (s, w) in specs.iter().zip(&found) {
        let w = w.clone().or_else(|| {
            let tc = s.name().replace("_NR_", "_TC_");
            specs.iter().zip(&found).find(|(t, _)| t.name() == tc).and_then(|(_, w)| w.clone())
        });
        if let Some(env) = w {
            out.push((s.clone(), env));
        }
    }
    out
}

/// Compares `actual` with the checked-in file, or rewrites it when UPDATE_GOLDENS is set.
pub fn golden(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path)
        .unwrap_or_else(|_| panic!("missing golden {}; run with UPDATE_GOLDENS=1", path.display()));
    if expected != actual {
        let line = expected.lines().zip(actual.lines()).position(|(a, b)| a != b).unwrap_or(0);
        panic!(
            "{} differs at line {}:\n  golden: {:?}\n  actual: {:?}",
            path.display(),
            line + 1,
            expected.lines().nth(line),
            actual.lines().nth(line)
        );
    }
}

fn mentions_basic(t: &TypeExpr) -> bool {
    match t {
        TypeExpr::Basic(_) => true,
        TypeExpr::Product(a, b) => mentions_basic(a) || mentions_basic(b),
        TypeExpr::Power(a) => mentions_basic(a),
        TypeExpr::Synonym(_, args) => args.iter().any(mentions_basic),
        _ => false,
    }
}

/// True when some variable's type involves a basic type, so the variant embedding differs.
pub fn uses_basic(spec: &TypedSpec) -> bool {
    spec.vars.iter().any(|v| mentions_basic(&v.declared))
}

/// Golden file name for a script; variant scripts get a `.variant` infix.
pub fn golden_script_name(script: &ztc::smt_emit::SmtScript) -> String {
    if script.variant {
        script.file_name().replacen('.', ".variant.", 1)
    } else {
        script.file_name()
    }
}
