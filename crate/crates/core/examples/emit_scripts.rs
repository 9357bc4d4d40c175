//! Emit a spec in both dialects, with and without the basic-type variant.
//!
//!     cargo run --example emit_scripts -- Fset_Basic

use ztc::smt_emit::{emit_script, Dialect};
use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "Mixed_Guard".into());
    let file = parse_file(include_str!("../corpus/toolkit.ztc")).unwrap();
    let spec = typecheck(&file.flatten(&name).expect("spec in corpus"), &file.types).unwrap();
    for d in [Dialect::Yices, Dialect::Cvc3] {
        for variant in [false, true] {
            match emit_script(&spec, d, variant) {
                Ok(s) => println!("==> {} (variant {variant})\n{}", s.file_name(), s.text()),
                Err(errs) => errs.iter().for_each(|e| eprintln!("{d}: {e}")),
            }
        }
    }
}
