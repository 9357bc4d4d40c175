//! Emitted scripts and model texts against checked-in files. Regenerate with
//! `UPDATE_GOLDENS=1 cargo test --test golden` and review the diff.

mod common;

use common::{corpus, golden, golden_script_name, known_witnesses, root, uses_basic};
use ztc::smt_emit::{emit_script, Dialect};
use ztc::witness::{parse_output, reconstruct, synthesize_model, translate_env, Origin, ReconstructError, Status};

const DIALECTS: [Dialect; 2] = [Dialect::Yices, Dialect::Cvc3];

#[test]
fn scripts_match_goldens() {
    let dir = root().join("tests/golden/scripts");
    for spec in corpus() {
        let variants: &[bool] = if uses_basic(&spec) { &[false, true] } else { &[false] };
        for &d in &DIALECTS {
            for &v in variants {
                let script = emit_script(&spec, d, v).unwrap();
                golden(&dir.join(golden_script_name(&script)), &script.text());
            }
        }
    }
}

#[test]
fn synthesized_models_match_goldens_and_read_back() {
    let dir = root().join("tests/golden/models");
    for (spec, env) in known_witnesses() {
        for &d in &DIALECTS {
            let script = emit_script(&spec, d, false).unwrap();
            let text = synthesize_model(&script, &translate_env(&spec, &script, &env), &Status::Sat);
            let path = dir.join(format!("{}.{}.model", spec.name(), d.name()));
            golden(&path, &text);
            let stored = std::fs::read_to_string(&path).unwrap();
            let w = reconstruct(&parse_output(&stored, &script), &script, &spec).unwrap();
            assert_eq!(w.env, env, "{}", path.display());
            assert!(w.confirmed());
        }
    }
}

fn handwritten(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden/models/handwritten").join(name)).unwrap()
}

#[test]
fn handwritten_yices_evidence() {
    let nr = common::corpus_spec("DetectReferenceEvent_NR_18");
    let script = emit_script(&nr, Dialect::Yices, false).unwrap();
    let out = parse_output(&handwritten("DetectReferenceEvent_NR_18.yices.sat"), &script);
    assert_eq!(out.status, Status::Sat);
    let w = reconstruct(&out, &script, &nr).unwrap();
    assert_eq!(w.origin, Origin::SolverModel);
    assert!(w.confirmed(), "{}", w.verdict);
    assert_eq!(w.env["ot"].to_string(), "{ThrustDrop1E |-> 3}");
    assert_eq!(w.env["tli"].to_string(), "{LiftOff |-> 2, ThrustDrop1E |-> 5, ThrustDrop2E |-> 4, ThrustDrop3E |-> 10}");
}

#[test]
fn handwritten_cvc3_potential_witness() {
    let nr = common::corpus_spec("DetectReferenceEvent_NR_18");
    let script = emit_script(&nr, Dialect::Cvc3, false).unwrap();
    let out = parse_output(&handwritten("DetectReferenceEvent_NR_18.cvc3.unknown"), &script);
    assert_eq!(out.status, Status::Unknown);
    let w = reconstruct(&out, &script, &nr).unwrap();
    assert_eq!(w.origin, Origin::SolverPotential);
    assert!(w.confirmed(), "{}", w.verdict);
}

#[test]
fn handwritten_inconsistent_finite_set() {
    let spec = common::corpus_spec("Fset_Card");
    let script = emit_script(&spec, Dialect::Yices, false).unwrap();
    let out = parse_output(&handwritten("Fset_Card.yices.cardmismatch"), &script);
    assert_eq!(
        reconstruct(&out, &script, &spec),
        Err(ReconstructError::CardMismatch { var: "A".into(), card: 1, members: 2 })
    );
}

#[test]
fn handwritten_truncated_output() {
    let spec = common::corpus_spec("Enum_EQ");
    let script = emit_script(&spec, Dialect::Cvc3, false).unwrap();
    let out = parse_output(&handwritten("Enum_EQ.cvc3.truncated"), &script);
    assert!(matches!(out.status, Status::ParseFailure { line: 3, .. }), "{:?}", out.status);
}
