use super::*;
use crate::zcore::{Expr, Pred, TypeExpr};
use proptest::prelude::*;

const LAUNCH: &str = include_str!("../../corpus/launch_vehicle.ztc");

#[test]
fn minimal_spec() {
    let f = parse_file("basic REVENT;\nspec T { now : NAT | 1 < now; now < 3 }").unwrap();
    let t = &f.specs[0];
    assert_eq!(t.decls, vec![("now".to_string(), TypeExpr::Nat)]);
    assert_eq!(
        t.preds,
        vec![
            Pred::Lt(Expr::int(1), Expr::var("now")),
            Pred::Lt(Expr::var("now"), Expr::int(3)),
        ]
    );
    assert_eq!(f.types.basics, vec!["REVENT".to_string()]);
}

#[test]
fn detect_reference_event_shape() {
    let f = parse_file(LAUNCH).unwrap();
    let nr = f.spec("DetectReferenceEvent_NR_18").unwrap();
    assert_eq!(nr.decls.len(), 8);
    // nine predicate lines, the last one a chained comparison
    assert_eq!(nr.preds.len(), 10);
    assert_eq!(nr.preds[8], Pred::Lt(Expr::int(1), Expr::var("now")));
    assert_eq!(nr.preds[9], Pred::Lt(Expr::var("now"), Expr::int(3)));
    assert_eq!(
        nr.preds[3],
        Pred::MemberOf(
            Expr::var("now"),
            Expr::range(
                Expr::apply(Expr::var("tli"), Expr::var("e?")),
                Expr::apply(Expr::var("tls"), Expr::var("e?"))
            )
        )
    );
    let tc = f.flatten("DetectReferenceEvent_TC_18").unwrap();
    assert_eq!(tc.decls.len(), 8);
    assert_eq!(tc.preds.len(), 18);
    assert_eq!(f.spec("DetectReferenceEvent_TC_18").unwrap().includes.len(), 1);
}

#[test]
fn undeclared_variable() {
    let err = parse_file("spec Bad { x : NAT | y = 1 }").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UndeclaredVariable("y".into()));
    assert_eq!((err.line, err.col), (1, 22));
}

#[test]
fn duplicate_variable_and_unknown_type() {
    let err = parse_file("spec D { x : NAT; x : INT }").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::DuplicateVariable("x".into()));
    let err = parse_file("spec D { x : FOO }").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UnknownType("FOO".into()));
}

#[test]
fn syntax_error_lists_expectations() {
    let err = parse_file("spec D { x : NAT | x ; }").unwrap_err();
    match err.kind {
        ParseErrorKind::Unexpected { expected, .. } => assert!(expected.contains(&"`in`".to_string())),
        k => panic!("unexpected {k:?}"),
    }
}

#[test]
fn empty_predicate_part_prints_declarations_only() {
    let f = parse_file("spec E { x : INT; y : P INT }").unwrap();
    assert_eq!(pretty_print(&f.specs[0]), "spec E {\n  x : INT;\n  y : P INT\n}\n");
}

#[test]
fn range_prints_infix() {
    let f = parse_file("spec R { x, a, b : INT | x in a..b + 1 }").unwrap();
    let printed = pretty_print(&f.specs[0]);
    assert!(printed.contains("x in a .. b + 1"), "{printed}");
}

#[test]
fn basic_constants_resolve_by_prefix() {
    let f = parse_file("basic MDATA, MDATAX;\nspec B { d : MDATA | d = MDATA2; d /= MDATAX1 }").unwrap();
    assert_eq!(
        f.specs[0].preds[0],
        Pred::Equal(Expr::var("d"), Expr::BasicLit { name: "MDATA2".into(), type_name: "MDATA".into() })
    );
    assert_eq!(
        f.specs[0].preds[1],
        Pred::NotEqual(Expr::var("d"), Expr::BasicLit { name: "MDATAX1".into(), type_name: "MDATAX".into() })
    );
}

#[test]
fn type_precedence() {
    let f = parse_file("basic A;\nspec T { f : A x A pfun P A x NAT; s : seq (A x A) }").unwrap();
    let a = TypeExpr::basic("A");
    assert_eq!(
        f.specs[0].decls[0].1,
        TypeExpr::pfun(
            TypeExpr::product(a.clone(), a.clone()),
            TypeExpr::product(TypeExpr::power(a.clone()), TypeExpr::Nat)
        )
    );
    let again = parse_file(&print_file(&f)).unwrap();
    assert_eq!(again.specs, f.specs);
}

fn corpus_files() -> Vec<(String, String)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ztc"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_round_trips() {
    for (path, text) in corpus_files() {
        let first = parse_file(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        let printed = print_file(&first);
        let second = parse_file(&printed).unwrap_or_else(|e| panic!("{path} reprint: {e}\n{printed}"));
        assert_eq!(first, second, "{path}");
        assert_eq!(print_file(&second), printed, "{path}: not a fixed point");
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-5i64..20).prop_map(Expr::IntLit),
        prop::sample::select(vec!["a", "b", "f", "e?"]).prop_map(Expr::var),
        prop::sample::select(vec!["LiftOff", "normal"]).prop_map(Expr::enum_lit),
        Just(Expr::EmptySet(None)),
        Just(Expr::EmptySet(Some(TypeExpr::product(TypeExpr::Int, TypeExpr::Nat)))),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::maplet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::range(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::apply(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::inter(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::diff(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(Expr::dom),
            inner.clone().prop_map(Expr::card),
            prop::collection::vec(inner, 1..3).prop_map(Expr::SetExt),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_reparse(a in arb_expr(), b in arb_expr()) {
        let header = "free REVENT ::= LiftOff;\nfree STATUS ::= normal;\nspec T { a, b : INT; f : INT pfun INT; e? : REVENT";
        let spec_text = |p: &Pred| format!("{header} | {p} }}");
        for p in [Pred::Equal(a.clone(), b.clone()), Pred::NotSubsetEq(a.clone(), b.clone())] {
            let parsed = parse_file(&spec_text(&p)).unwrap();
            prop_assert_eq!(&parsed.specs[0].preds[0], &p);
        }
    }

    #[test]
    fn error_positions_in_bounds(text in "[a-z{}|;: 0-9=<@.\n-]{0,40}") {
        if let Err(e) = parse_file(&format!("spec S {{ a : INT | {text}")) {
            let full = format!("spec S {{ a : INT | {text}");
            let lines: Vec<&str> = full.split('\n').collect();
            prop_assert!(e.line >= 1 && e.line <= lines.len());
            prop_assert!(e.col >= 1 && e.col <= lines[e.line - 1].chars().count() + 1);
        }
    }
}
