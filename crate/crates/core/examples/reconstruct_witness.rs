//! Read a solver model back into Z: synthesize dialect-shaped model text from a known
//! witness, parse it, rebuild the binding and print it as a test case.

use ztc::smt_emit::{emit_script, Dialect};
use ztc::witness::{parse_output, reconstruct, synthesize_model, translate_env, Status};
use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

fn main() {
    let file = parse_file(include_str!("../corpus/toolkit.ztc")).unwrap();
    let spec = typecheck(&file.flatten("Ffun_Card").unwrap(), &file.types).unwrap();
    let ztc::fms::SearchResult::Witness(env) = ztc::fms::search(&spec, &Default::default()).result else {
        panic!("no witness")
    };
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let script = emit_script(&spec, d, false).unwrap();
        let model = synthesize_model(&script, &translate_env(&spec, &script, &env), &Status::Unknown);
        println!("--- {d} model\n{model}");
        let w = reconstruct(&parse_output(&model, &script), &script, &spec).unwrap();
        println!("{}", serde_json::to_string_pretty(&w.to_json()).unwrap());
        print!("{}", w.test_case(&spec));
        assert_eq!(w.env, env);
    }
}
