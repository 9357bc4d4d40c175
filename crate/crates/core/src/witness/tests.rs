use super::*;
use crate::smt_emit::{emit_script, SentenceKind};
use crate::zcore::Value;
use crate::zparse::parse_file;
use crate::ztype::typecheck;

const LAUNCH: &str = include_str!("../../corpus/launch_vehicle.ztc");

fn launch(name: &str) -> TypedSpec {
    let file = parse_file(LAUNCH).unwrap();
    typecheck(&file.flatten(name).unwrap(), &file.types).unwrap()
}

fn spec(body: &str) -> TypedSpec {
    let src = format!("free STATUS ::= normal | failure;\nbasic B;\nspec S {{ {body} }}");
    let file = parse_file(&src).unwrap();
    typecheck(&file.flatten("S").unwrap(), &file.types).unwrap()
}

fn rev(name: &str) -> Value {
    let names = ["LiftOff", "ThrustDrop1E", "ThrustDrop2E", "ThrustDrop3E"];
    Value::enum_const("REVENT", name, names.iter().position(|n| *n == name).unwrap() as u32)
}

fn table(pairs: &[(&str, i64)]) -> Value {
    Value::set(pairs.iter().map(|(e, n)| Value::pair(rev(e), Value::Int(*n))))
}

/// The binding of the test case schema.
fn tc18() -> Env {
    let mut env = Env::new();
    env.insert("tli".into(), table(&[("LiftOff", 2), ("ThrustDrop1E", 5), ("ThrustDrop2E", 4), ("ThrustDrop3E", 10)]));
    env.insert("tls".into(), table(&[("LiftOff", 10), ("ThrustDrop1E", 12), ("ThrustDrop2E", 14), ("ThrustDrop3E", 16)]));
    env.insert("X".into(), table(&[("LiftOff", 3), ("ThrustDrop1E", 5), ("ThrustDrop2E", 7), ("ThrustDrop3E", 9)]));
    env.insert("e?".into(), rev("LiftOff"));
    env.insert("sysState".into(), Value::enum_const("STATUS", "normal", 0));
    env.insert("now".into(), Value::Int(2));
    env.insert("fa".into(), Value::Int(10));
    env.insert("ot".into(), table(&[("ThrustDrop1E", 3)]));
    env
}

#[test]
fn test_case_binding_satisfies_every_assert() {
    let nr = launch("DetectReferenceEvent_NR_18");
    assert!(check_spec(&nr, &tc18()).is_satisfied());
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let script = emit_script(&nr, d, false).unwrap();
        let results = interpret_script(&script, &translate_env(&nr, &script, &tc18())).unwrap();
        assert_eq!(results.iter().filter(|(k, _)| matches!(k, SentenceKind::Assert(_))).count(), nr.preds.len());
        assert!(results.iter().all(|(_, b)| *b), "{d}: {results:?}");
    }
}

#[test]
fn a_violated_predicate_falsifies_its_assert() {
    let nr = launch("DetectReferenceEvent_NR_18");
    let mut env = tc18();
    env.insert("now".into(), Value::Int(5));
    assert_eq!(check_spec(&nr, &env), Verdict::Failed(crate::zeval::Step::Pred(9)));
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let script = emit_script(&nr, d, false).unwrap();
        let results = interpret_script(&script, &translate_env(&nr, &script, &env)).unwrap();
        let last = results.iter().find(|(k, _)| *k == SentenceKind::Assert(9)).unwrap();
        assert!(!last.1, "{d}");
    }
}

#[test]
fn synthesized_models_round_trip() {
    let nr = launch("DetectReferenceEvent_NR_18");
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let script = emit_script(&nr, d, false).unwrap();
        let model = synthesize_model(&script, &translate_env(&nr, &script, &tc18()), &Status::Sat);
        let out = parse_output(&model, &script);
        assert_eq!(out.status, Status::Sat, "{model}");
        let w = reconstruct(&out, &script, &nr).unwrap();
        assert_eq!(w.env, tc18(), "{d}");
        assert_eq!(w.origin, Origin::SolverModel);
        assert!(w.confirmed());
    }
}

#[test]
fn model_line_shapes() {
    let nr = launch("DetectReferenceEvent_NR_18");
    let y = emit_script(&nr, Dialect::Yices, false).unwrap();
    let model = synthesize_model(&y, &translate_env(&nr, &y, &tc18()), &Status::Sat);
    assert!(model.lines().any(|l| l == "(= (ot_dom ThrustDrop1E) true)"), "{model}");
    assert!(model.lines().any(|l| l == "(= now 2)"));
    let c = emit_script(&nr, Dialect::Cvc3, false).unwrap();
    let model = synthesize_model(&c, &translate_env(&nr, &c, &tc18()), &Status::Sat);
    assert!(model.starts_with("Satisfiable.\n"));
    assert!(model.lines().any(|l| l == "ASSERT (ot.dom[ThrustDrop1E] = 0bin1);"), "{model}");
}

#[test]
fn unknown_answers_give_potential_witnesses() {
    let nr = launch("DetectReferenceEvent_NR_18");
    let script = emit_script(&nr, Dialect::Yices, false).unwrap();
    let model = synthesize_model(&script, &translate_env(&nr, &script, &tc18()), &Status::Unknown);
    let w = reconstruct(&parse_output(&model, &script), &script, &nr).unwrap();
    assert_eq!(w.origin, Origin::SolverPotential);
    assert_eq!(w.to_json()["origin"], "solver-potential");
    assert_eq!(w.to_json()["verified"], true);
}

#[test]
fn unsat_and_garbage() {
    let s = spec("x : INT | x > 0");
    let script = emit_script(&s, Dialect::Yices, false).unwrap();
    let out = parse_output("unsat\n", &script);
    assert_eq!(out.status, Status::Unsat);
    assert!(matches!(reconstruct(&out, &script, &s), Err(ReconstructError::NoModel(Status::Unsat))));
    let out = parse_output("sat\n(= x\n", &script);
    assert!(matches!(out.status, Status::ParseFailure { line: 2, .. }), "{:?}", out.status);
    let out = parse_output("segfault\n", &script);
    assert!(matches!(out.status, Status::ParseFailure { line: 1, .. }));
    let out = parse_output("", &script);
    assert!(matches!(out.status, Status::ParseFailure { .. }));
}

#[test]
fn missing_and_inconsistent_models() {
    let s = spec("x : INT; A : fset STATUS | x > 0; # A = 1");
    let script = emit_script(&s, Dialect::Yices, false).unwrap();
    let out = parse_output("sat\n(= x 4)\n", &script);
    assert_eq!(reconstruct(&out, &script, &s), Err(ReconstructError::MissingBinding("A".into())));
    let text = "sat\n(= x 4)\n(= (A_set normal) true)\n(= (A_set failure) true)\n(= A_card 1)\n";
    let out = parse_output(text, &script);
    assert_eq!(
        reconstruct(&out, &script, &s),
        Err(ReconstructError::CardMismatch { var: "A".into(), card: 1, members: 2 })
    );
    let n = spec("n : NAT | n < 3");
    let script = emit_script(&n, Dialect::Cvc3, false).unwrap();
    let out = parse_output("Satisfiable.\nASSERT (n = -1);\n", &script);
    assert_eq!(reconstruct(&out, &script, &n), Err(ReconstructError::NegativeNat { var: "n".into(), value: -1 }));
}

#[test]
fn solver_invented_basic_elements_get_fresh_names() {
    let s = spec("b, c : B | b /= B1; c = B1");
    let script = emit_script(&s, Dialect::Yices, false).unwrap();
    let out = parse_output("sat\n(= B1 B!0)\n(= b B!1)\n(= c B!0)\n", &script);
    let w = reconstruct(&out, &script, &s).unwrap();
    assert_eq!(w.env["c"], Value::basic("B", "B1"));
    assert_eq!(w.env["b"], Value::basic("B", "B2"));
    assert!(w.confirmed());
    assert!(w.test_case(&s).contains("b = B2"));
}

#[test]
fn reconstructed_bindings_are_rechecked() {
    let s = spec("x : INT | x > 0");
    let script = emit_script(&s, Dialect::Yices, false).unwrap();
    let w = reconstruct(&parse_output("sat\n(= x -3)\n", &script), &script, &s).unwrap();
    assert!(!w.confirmed());
    assert_eq!(w.to_json()["verified"], false);
}

#[test]
fn test_case_block_reparses() {
    let nr = launch("DetectReferenceEvent_NR_18");
    let w = Witness::verify(&nr, tc18(), Origin::FiniteModelSearch, None);
    let src = format!("{}\n{}", LAUNCH, w.test_case(&nr));
    let file = parse_file(&src).unwrap();
    let tc = typecheck(&file.flatten("DetectReferenceEvent_NR_18_TC").unwrap(), &file.types).unwrap();
    assert!(check_spec(&tc, &tc18()).is_satisfied());
}
