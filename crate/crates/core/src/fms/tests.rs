use std::collections::BTreeSet;

use super::*;
use crate::zeval::{check_spec_in, Verdict};
use crate::zparse::parse_file;
use crate::ztype::typecheck;

const LAUNCH: &str = include_str!("../../corpus/launch_vehicle.ztc");
const TYPES: &str = "free REVENT ::= LiftOff | ThrustDrop1E | ThrustDrop2E | ThrustDrop3E;\n\
                     free STATUS ::= normal | failure;\nbasic B;\n";

fn spec(body: &str) -> TypedSpec {
    let file = parse_file(&format!("{TYPES}spec S {{ {body} }}")).unwrap();
    typecheck(&file.flatten("S").unwrap(), &file.types).unwrap()
}

fn launch(name: &str) -> TypedSpec {
    let file = parse_file(LAUNCH).unwrap();
    typecheck(&file.flatten(name).unwrap(), &file.types).unwrap()
}

fn cfg(fss: usize) -> SearchConfig {
    SearchConfig::new(fss, 10_000).unwrap()
}

#[test]
fn config_rejects_zero() {
    assert_eq!(SearchConfig::new(0, 5), Err(ConfigError::ZeroFss));
    assert_eq!(SearchConfig::new(3, 0), Err(ConfigError::ZeroMax));
    let d = SearchConfig::default();
    assert_eq!((d.fss(), d.max(), d.pad_numeric), (3, 10_000, false));
}

#[test]
fn seed_takes_first_literals_in_order() {
    let s = spec("m : INT; d? : fset INT | 43 < m + # d?; m > 0; m < 7");
    assert_eq!(numeric_seed(&s, &cfg(2)).int, vec![43, 0]);
    assert_eq!(numeric_seed(&s, &cfg(5)).int, vec![43, 0, 7]);
}

#[test]
fn seed_defaults_without_literals() {
    let s = spec("n : NAT; z : INT | n = z");
    let seed = numeric_seed(&s, &cfg(3));
    assert_eq!(seed.nat, vec![0, 1, 2]);
    assert_eq!(seed.int, vec![-1, 0, 1]);
    assert_eq!(numeric_seed(&s, &cfg(2)).int, vec![0, 1]);
}

#[test]
fn pinned_variables_get_one_candidate() {
    let s = spec("sysState : STATUS | sysState = normal");
    let t = s.var("sysState").unwrap().declared.clone();
    let (c, notes) = build_candidates("sysState", &t, &s, &cfg(3));
    assert_eq!(c, vec![Value::enum_const("STATUS", "normal", 0)]);
    assert!(notes.is_empty());
    let r = search(&s, &cfg(3));
    assert_eq!(r.stats.explored, 1);
    assert!(matches!(r.result, SearchResult::Witness(_)));
}

#[test]
fn total_functions_enumerated() {
    let s = spec("tli : REVENT fun NAT | 2 < tli @ LiftOff; tli @ ThrustDrop1E /= 3");
    let t = s.var("tli").unwrap().declared.clone();
    let (c, _) = build_candidates("tli", &t, &s, &cfg(3));
    // oracle: one bit per event chooses 2 or 3
    let events = ["LiftOff", "ThrustDrop1E", "ThrustDrop2E", "ThrustDrop3E"];
    let expected: BTreeSet<Value> = (0u32..16)
        .map(|mask| {
            Value::set(events.iter().enumerate().map(|(i, e)| {
                let y = if mask >> i & 1 == 1 { 3 } else { 2 };
                Value::pair(Value::enum_const("REVENT", e, i as u32), Value::Int(y))
            }))
        })
        .collect();
    assert_eq!(c.len(), 16);
    assert_eq!(c.into_iter().collect::<BTreeSet<_>>(), expected);
}

#[test]
fn unused_variable_is_a_singleton() {
    let s = spec("pad : INT; x : STATUS | x = normal");
    let t = s.var("pad").unwrap().declared.clone();
    assert_eq!(build_candidates("pad", &t, &s, &cfg(3)).0, vec![Value::Int(0)]);
}

#[test]
fn clock_window_needs_the_middle_value() {
    let s = spec("now : NAT | 1 < now; now < 3");
    assert_eq!(search(&s, &cfg(2)).result, SearchResult::Exhausted { at: Some(1) });
    assert_eq!(search(&s, &cfg(3)).result, SearchResult::Exhausted { at: Some(1) });
    let padded = cfg(3).with_padding(true);
    assert_eq!(numeric_seed(&s, &padded).nat, vec![1, 3, 0]);
    assert_eq!(search(&s, &padded).result, SearchResult::Exhausted { at: Some(1) });
    let wider = cfg(4).with_padding(true);
    let SearchResult::Witness(w) = search(&s, &wider).result else { panic!() };
    assert_eq!(w["now"], Value::Int(2));
}

#[test]
fn basic_types_get_fresh_constants() {
    let s = spec("b : B; f : B fun INT | f @ b = 1");
    let t = s.var("b").unwrap().declared.clone();
    let (c, _) = build_candidates("b", &t, &s, &cfg(2));
    assert_eq!(c, vec![Value::basic("B", "B1"), Value::basic("B", "B2")]);
    let SearchResult::Witness(w) = search(&s, &cfg(2)).result else { panic!() };
    assert_eq!(check_spec_in(&s, &w, &search_universe(&s, &cfg(2))), Verdict::Satisfied);
}

#[test]
fn sequences_and_finite_sets() {
    let s = spec("q : seq STATUS; A : fset NAT | # q = 2; # A = 2; q @ 1 = failure");
    let SearchResult::Witness(w) = search(&s, &cfg(3)).result else { panic!() };
    let fail = Value::enum_const("STATUS", "failure", 1);
    let normal = Value::enum_const("STATUS", "normal", 0);
    assert_eq!(w["q"], Value::set([Value::pair(Value::Int(1), fail), Value::pair(Value::Int(2), normal)]));
    // literals 2 and 1 seed NAT, so the only two-element set is {1, 2}
    assert_eq!(w["A"], Value::set([Value::Int(1), Value::Int(2)]));
}

#[test]
fn candidate_lists_are_capped() {
    let s = spec("A : P (INT x INT) | A = A");
    let small = SearchConfig::new(3, 50).unwrap();
    let t = s.var("A").unwrap().declared.clone();
    let (c, notes) = build_candidates("A", &t, &s, &small);
    assert_eq!(c.len(), 50);
    assert_eq!(notes, vec![Note::CandidateExplosion { var: "A".into(), kept: 50 }]);
}

#[test]
fn test_case_schema_is_found() {
    let tc = launch("DetectReferenceEvent_TC_18");
    let r = search(&tc, &cfg(3));
    let SearchResult::Witness(w) = r.result else { panic!("{:?}", r.result) };
    assert_eq!(w["now"], Value::Int(2));
    assert_eq!(r.stats.explored, 1);
    assert_eq!(crate::zeval::check_spec(&tc, &w), Verdict::Satisfied);
}

#[test]
fn paper_spec_exceeds_max_without_witness() {
    let nr = launch("DetectReferenceEvent_NR_18");
    let r = search(&nr, &cfg(3));
    assert_eq!(r.result, SearchResult::Capped);
    assert_eq!(r.stats.explored, 10_000);
    assert!(r.stats.estimated_size > 10_000);
}

#[test]
fn survivors_shrink_monotonically() {
    let s = spec("x, y : NAT; e : REVENT | x < 2; e /= LiftOff; x + y > 1; y /= 5");
    let r = search(&s, &cfg(3));
    assert!(r.stats.survivors.windows(2).all(|w| w[1] <= w[0]));
    assert!(matches!(r.result, SearchResult::Witness(_)));
}
