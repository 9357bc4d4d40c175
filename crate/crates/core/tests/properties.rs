//! Cross-module properties over the corpus.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, corpus_files, known_witnesses};
use ztc::fms::{finite_model, SearchConfig};
use ztc::smt_emit::{emit_script, Dialect};
use ztc::witness::{interpret_script, translate_env, Origin, Witness};
use ztc::zeval::{check_spec, Env};
use ztc::zparse::{parse_file, print_file};

#[test]
fn printing_round_trips_the_corpus() {
    for f in corpus_files() {
        let src = parse_file(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let printed = print_file(&src);
        let again = parse_file(&printed).unwrap();
        assert_eq!(again.specs, src.specs, "{}", f.display());
        assert_eq!(again.types, src.types);
        assert_eq!(print_file(&again), printed);
    }
}

/// check_spec accepts a binding exactly when every emitted sentence holds under it.
#[test]
fn evaluator_and_emitted_scripts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = SearchConfig::default();
    let (mut sat, mut unsat) = (0, 0);
    for spec in corpus() {
        let model = finite_model(&spec, &cfg);
        if model.per_var.iter().any(|(_, c)| c.is_empty()) {
            continue;
        }
        let scripts: Vec<_> = [Dialect::Yices, Dialect::Cvc3].map(|d| emit_script(&spec, d, false).unwrap()).into();
        for _ in 0..25 {
            let env: Env = model
                .per_var
                .iter()
                .map(|(n, c)| (n.clone(), c[rng.gen_range(0..c.len())].clone()))
                .collect();
            let ok = check_spec(&spec, &env).is_satisfied();
            for s in &scripts {
                let results = interpret_script(s, &translate_env(&spec, s, &env)).unwrap();
                let all = results.iter().all(|(_, b)| *b);
                assert_eq!(ok, all, "{} {}: {env:?}\n{results:?}", spec.name(), s.dialect);
            }
            if ok {
                sat += 1;
            } else {
                unsat += 1;
            }
        }
    }
    assert!(sat > 0 && unsat > 0, "{sat} / {unsat}");
}

#[test]
fn witnesses_are_verified_before_being_confirmed() {
    for (spec, mut env) in known_witnesses() {
        assert!(Witness::verify(&spec, env.clone(), Origin::SolverPotential, None).confirmed());
        let v = spec.vars[0].name.clone();
        env.remove(&v);
        let w = Witness::verify(&spec, env, Origin::SolverPotential, None);
        assert!(!w.confirmed(), "{}", spec.name());
        assert_eq!(w.to_json()["verified"], false);
    }
}

#[test]
fn verdicts_are_deterministic() {
    for (spec, env) in known_witnesses() {
        assert_eq!(check_spec(&spec, &env), check_spec(&spec, &env));
    }
}
