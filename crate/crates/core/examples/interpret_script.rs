//! Evaluate an emitted script under a witness translated to solver values: every
//! assert holds, and breaking the witness falsifies one.

use ztc::fms::{search, SearchConfig, SearchResult};
use ztc::smt_emit::{emit_script, Dialect, SentenceKind};
use ztc::witness::{interpret_script, translate_env};
use ztc::zcore::Value;
use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

fn main() {
    let file = parse_file(include_str!("../corpus/toolkit.ztc")).unwrap();
    let spec = typecheck(&file.flatten("Mixed_Guard").unwrap(), &file.types).unwrap();
    let SearchResult::Witness(env) = search(&spec, &SearchConfig::default()).result else {
        panic!("no witness")
    };
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let script = emit_script(&spec, d, false).unwrap();
        let show = |env: &ztc::zeval::Env| {
            let results = interpret_script(&script, &translate_env(&spec, &script, env)).unwrap();
            for (kind, ok) in results {
                if let SentenceKind::Assert(i) = kind {
                    print!("p{}={} ", i + 1, if ok { "T" } else { "F" });
                } else if !ok {
                    print!("{kind:?}=F ");
                }
            }
            println!();
        };
        print!("{d:<6} witness: ");
        show(&env);
        let mut broken = env.clone();
        broken.insert("now".into(), Value::Int(7));
        print!("{d:<6} now = 7: ");
        show(&broken);
    }
}
