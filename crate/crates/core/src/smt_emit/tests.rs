use super::*;
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

fn yices(body: &str) -> SmtScript {
    emit_script(&spec(body), Dialect::Yices, false).unwrap()
}

fn cvc3(body: &str) -> SmtScript {
    emit_script(&spec(body), Dialect::Cvc3, false).unwrap()
}

fn lines(s: &SmtScript) -> Vec<&str> {
    s.sentences.iter().map(|s| s.text.as_str()).collect()
}

fn has(s: &SmtScript, line: &str) {
    assert!(lines(s).contains(&line), "missing `{line}` in\n{}", s.text());
}

#[test]
fn partial_function_is_a_record() {
    let s = emit_script(&launch("DetectReferenceEvent_NR_18"), Dialect::Yices, false).unwrap();
    has(&s, "(define ot::(record dom::(-> REVENT bool) law::(-> REVENT nat)))");
    has(&s, "(define tli::(-> REVENT nat))");
    has(&s, "(assert (not ((select ot dom) e_q)))");
    has(&s, "(define otSet::(-> REVENT int bool) (lambda (x::REVENT y::int) (and ((select ot dom) x) (= ((select ot law) x) y))))");
    let c = emit_script(&launch("DetectReferenceEvent_NR_18"), Dialect::Cvc3, false).unwrap();
    has(&c, "ot : [# dom : ARRAY REVENT OF BITVECTOR(1), law : ARRAY REVENT OF NAT #];");
    has(&c, "NAT : TYPE = SUBTYPE(LAMBDA (x : INT) : 0 <= x);");
    has(&c, "DATATYPE REVENT = LiftOff | ThrustDrop1E | ThrustDrop2E | ThrustDrop3E END;");
}

#[test]
fn typed_empty_set_is_mangled() {
    let s = emit_script(&launch("DetectReferenceEvent_NR_18"), Dialect::Yices, false).unwrap();
    has(&s, "(define emptysetREVENTxINT::(-> REVENT int bool) (lambda (a::REVENT b::int) false))");
    has(&s, "(assert (= (capREVENTxINT otSet (lambda (a::REVENT b::int) (and (= a e_q) (= b now)))) emptysetREVENTxINT))");
    assert_eq!(s.aux, ["otSet", "emptysetREVENTxINT", "capREVENTxINT"]);
    let c = emit_script(&launch("DetectReferenceEvent_NR_18"), Dialect::Cvc3, false).unwrap();
    has(&c, "emptysetREVENTxINT : ARRAY [REVENT, INT] OF BITVECTOR(1) = (ARRAY (x : [REVENT, INT]) : 0bin0);");
}

#[test]
fn set_operators_follow_the_figures() {
    let s = yices("s, t : P INT | s cap t = {}; s subseteq t");
    has(&s, "(define emptysetINT::(-> int bool) (lambda (x::int) false))");
    has(&s, "(define capINT::(-> (-> int bool) (-> int bool) (-> int bool)) (lambda (A::(-> int bool) B::(-> int bool)) (lambda (x::int) (and (A x) (B x)))))");
    has(&s, "(define subseteqINT::(-> (-> int bool) (-> int bool) bool) (lambda (A::(-> int bool) B::(-> int bool)) (forall (x::int) (=> (A x) (B x)))))");
    has(&s, "(assert (subseteqINT s t))");
    let c = cvc3("s, t : P INT | s cap t = {}; s subseteq t");
    has(&c, "capINT : (ARRAY INT OF BITVECTOR(1), ARRAY INT OF BITVECTOR(1)) -> ARRAY INT OF BITVECTOR(1);");
    has(&c, "ASSERT FORALL (A, B : ARRAY INT OF BITVECTOR(1)) : capINT(A, B) = (ARRAY (x : INT) : IF A[x] = 0bin1 AND B[x] = 0bin1 THEN 0bin1 ELSE 0bin0 ENDIF);");
    has(&c, "subseteqINT : (ARRAY INT OF BITVECTOR(1), ARRAY INT OF BITVECTOR(1)) -> BOOLEAN;");
    has(&c, "ASSERT FORALL (A, B : ARRAY INT OF BITVECTOR(1)) : subseteqINT(A, B) <=> FORALL (x : INT) : A[x] = 0bin1 => B[x] = 0bin1;");
}

#[test]
fn finite_set_axioms() {
    let s = yices("A : fset STATUS | # A = 1");
    has(&s, "(define A::(record set::(-> STATUS bool) bij::(-> STATUS nat1) card::nat))");
    has(&s, "(define-type nat1 (subtype (n::nat) (> n 0)))");
    has(&s, "(assert (forall (x::STATUS) (<=> ((select A set) x) (<= ((select A bij) x) (select A card)))))");
    has(&s, "(assert (forall (n::nat1 x1::STATUS x2::STATUS) (=> (and (<= n (select A card)) ((select A set) x1) ((select A set) x2) (= ((select A bij) x1) n) (= ((select A bij) x2) n)) (= x1 x2))))");
    has(&s, "(assert (= (select A card) 1))");
    let c = cvc3("A : fset STATUS | # A = 1");
    has(&c, "A : [# set : ARRAY STATUS OF BITVECTOR(1), bij : ARRAY STATUS OF NAT1, card : NAT #];");
    has(&c, "ASSERT FORALL (x : STATUS) : A.set[x] = 0bin1 <=> A.bij[x] <= A.card;");
    has(&c, "ASSERT FORALL (n : NAT1, x1, x2 : STATUS) : n <= A.card AND A.set[x1] = 0bin1 AND A.set[x2] = 0bin1 AND A.bij[x1] = n AND A.bij[x2] = n => x1 = x2;");
}

#[test]
fn sequence_axiom() {
    let s = yices("q : seq STATUS | q @ 1 = failure");
    has(&s, "(define q::(record dom::(-> nat1 bool) law::(-> nat1 STATUS) card::nat))");
    has(&s, "(assert (forall (n::nat1) (<=> (<= n (select q card)) ((select q dom) n))))");
    has(&s, "(assert (= ((select q law) 1) failure))");
    let c = cvc3("q : seq STATUS | q @ 1 = failure");
    has(&c, "ASSERT FORALL (n : NAT1) : n <= q.card <=> q.dom[n] = 0bin1;");
}

#[test]
fn range_membership_is_inlined() {
    let s = yices("now : NAT | now in 1 .. 3");
    has(&s, "(assert (and (<= 1 now) (<= now 3)))");
    assert!(s.aux.is_empty());
    let c = cvc3("now : NAT | now in 1 .. 3");
    has(&c, "ASSERT 1 <= now AND now <= 3;");
}

#[test]
fn cardinality_of_extensions_and_ranges() {
    let s = yices("b : B; n : INT | # {b, B1} = 2; # (1 .. n) > 0; # {1, 2, 3} = 3");
    has(&s, "(assert (= (+ 1 (ite (not (= B1 b)) 1 0)) 2))");
    has(&s, "(assert (> (ite (<= 1 n) (+ (- n 1) 1) 0) 0))");
    has(&s, "(assert (= 3 3))");
}

#[test]
fn natural_leaves_of_sets_are_bounded() {
    let s = yices("r : NAT rel STATUS | r = r");
    has(&s, "(define r::(-> int STATUS bool))");
    has(&s, "(assert (forall (a::int b::STATUS) (=> (r a b) (>= a 0))))");
    let c = cvc3("r : NAT rel STATUS | r = r");
    has(&c, "ASSERT FORALL (x : [INT, STATUS]) : r[x] = 0bin1 => x.0 >= 0;");
}

#[test]
fn predicates_map_one_to_one_onto_asserts() {
    let nr = launch("DetectReferenceEvent_NR_18");
    for d in [Dialect::Yices, Dialect::Cvc3] {
        let s = emit_script(&nr, d, false).unwrap();
        let idx: Vec<usize> = s.asserts().map(|(i, _)| i).collect();
        assert_eq!(idx, (0..nr.preds.len()).collect::<Vec<_>>());
    }
}

#[test]
fn script_layout() {
    let s = yices("x : INT | x > 0");
    let kinds: Vec<SentenceKind> = s.sentences.iter().map(|s| s.kind).collect();
    assert_eq!(kinds.last(), Some(&SentenceKind::Check));
    assert!(kinds.contains(&SentenceKind::ModelRequest));
    assert_eq!(s.file_name(), "S.yices.ys");
    let c = cvc3("x : INT | x > 0");
    let tail: Vec<&str> = lines(&c).into_iter().rev().take(2).collect();
    assert_eq!(tail, ["COUNTERMODEL;", "CHECKSAT;"]);
    assert_eq!(c.file_name(), "S.cvc3.cvc");
}

#[test]
fn empty_predicate_list() {
    let s = yices("x : STATUS");
    assert_eq!(s.asserts().count(), 0);
    has(&s, "(define x::STATUS)");
    assert_eq!(lines(&s).last(), Some(&"(check)"));
}

#[test]
fn basic_types_and_the_variant() {
    let s = yices("b : B | b /= B1; b /= B2");
    has(&s, "(define-type B)");
    has(&s, "(define B1::B)");
    has(&s, "(assert (not (= B1 B2)))");
    let v = emit_script(&spec("b : B | b /= B1; b /= B2"), Dialect::Yices, true).unwrap();
    has(&v, "(define-type B (scalar B1 B2 B3))");
    assert!(v.sentences.iter().all(|s| s.kind != SentenceKind::Axiom));
    let c = emit_script(&spec("b : B | b /= B1"), Dialect::Cvc3, true).unwrap();
    has(&c, "DATATYPE B = B1 | B2 | B3 END;");
    assert_eq!(c.universe.constants[0], ("B".to_string(), vec!["B1".into(), "B2".into(), "B3".into()]));
    let err = emit_script(&spec("b : B | b /= B4"), Dialect::Cvc3, true).unwrap_err();
    assert_eq!(err[0].pred, Some(0));
    assert!(matches!(err[0].kind, EmitErrorKind::UnsupportedPredicate(_)));
}

#[test]
fn names_are_escaped() {
    let s = yices("e? : STATUS; card, out! : INT | e? = normal; card = out!");
    assert_eq!(s.emitted("e?"), Some("e_q"));
    assert_eq!(s.emitted("card"), Some("card_"));
    assert_eq!(s.emitted("out!"), Some("out_b"));
    has(&s, "(assert (= card_ out_b))");
}

#[test]
fn nested_synonyms_are_rejected() {
    let err = emit_script(&spec("f : STATUS pfun (seq INT) | f = f"), Dialect::Yices, false).unwrap_err();
    assert!(matches!(&err[0].kind, EmitErrorKind::UnsupportedType { var, .. } if var == "f"));
    assert_eq!(err[0].pred, None);
}

#[test]
fn emission_is_deterministic() {
    let nr = launch("DetectReferenceEvent_TC_18");
    for d in [Dialect::Yices, Dialect::Cvc3] {
        assert_eq!(emit_script(&nr, d, false).unwrap().text(), emit_script(&nr, d, false).unwrap().text());
    }
}
