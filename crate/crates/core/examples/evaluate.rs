//! Evaluate the launch-vehicle test case against its test specification.

use ztc::zeval::{check_spec, Env};
use ztc::zparse::parse_file;
use ztc::ztype::typecheck;

fn main() {
    let file = parse_file(include_str!("../corpus/launch_vehicle.ztc")).unwrap();
    let nr = typecheck(&file.flatten("DetectReferenceEvent_NR_18").unwrap(), &file.types).unwrap();
    let tc = file.spec("DetectReferenceEvent_TC_18").unwrap();

    // every test-case predicate is `var = value`; evaluate the right-hand sides
    let mut env = Env::new();
    for p in &tc.preds {
        let ztc::zcore::Pred::Equal(ztc::zcore::Expr::Var(v), e) = p else { continue };
        env.insert(v.clone(), ztc::zeval::eval_expr(e, &Env::new(), &file.types).unwrap());
    }
    for (k, v) in &env {
        println!("{k} = {v}");
    }
    println!("verdict: {}", check_spec(&nr, &env));

    env.insert("now".into(), ztc::zcore::Value::Int(5));
    println!("with now = 5: {}", check_spec(&nr, &env));
}
