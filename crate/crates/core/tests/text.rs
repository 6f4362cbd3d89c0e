use modspec::oracle::{gen_random, GenParams};
use modspec::{export_dot, parse, parse_with, serialize, Alphabet, Error, Formula, Kind, Spec, SupportMode};
use proptest::prelude::*;

#[test]
fn invariance_naa_block() {
    let s = parse("naa { alphabet a, b; init s0; state s0 {{(a, s0)}, {(a, s0), (b, s0)}}; }").unwrap();
    let Spec::Naa(n) = s else { panic!() };
    assert_eq!(n.tran(0), [vec![(0, 0)], vec![(0, 0), (1, 0)]]);
}

#[test]
fn invariance_formula() {
    let Spec::Hml(h) = parse("hml { alphabet a,b; init X; X = <a>tt & [a]X & [b]X; }").unwrap() else { panic!() };
    let expected = Formula::and(
        Formula::and(Formula::diamond(0, Formula::True), Formula::boxed(0, Formula::Var(0))),
        Formula::boxed(1, Formula::Var(0)),
    );
    assert_eq!(h.body(0), &expected);
}

#[test]
fn precedence_modal_then_and_then_or() {
    let Spec::Hml(h) = parse("hml { alphabet a; init X; X = <a>X & X | [a]ff; }").unwrap() else { panic!() };
    let expected = Formula::or(
        Formula::and(Formula::diamond(0, Formula::Var(0)), Formula::Var(0)),
        Formula::boxed(0, Formula::False),
    );
    assert_eq!(h.body(0), &expected);
    let Spec::Hml(h) = parse("hml { alphabet a; init X; X = <a>(X & X); }").unwrap() else { panic!() };
    assert_eq!(h.body(0), &Formula::diamond(0, Formula::and(Formula::Var(0), Formula::Var(0))));
}

#[test]
fn syntax_errors_carry_position_and_expectations() {
    let err = parse("dmts {\n  alphabet a;\n  init s;\n  may s a;\n}").unwrap_err();
    match err {
        Error::Syntax { line, col, expected, found } => {
            assert_eq!((line, col), (4, 10));
            assert_eq!(expected, ["identifier"]);
            assert_eq!(found, "`;`");
        }
        other => panic!("{other:?}"),
    }
    let err = parse("graph { }").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 1, col: 1, ref expected, .. } if expected.len() == 5));
    let err = parse("hml { alphabet a; init X; X = ; }").unwrap_err();
    assert!(matches!(err, Error::Syntax { ref expected, .. } if expected.contains(&"`tt`".to_string())));
}

#[test]
fn semantic_errors() {
    assert!(matches!(parse("dmts { alphabet a; init s; may s c s; }"), Err(Error::UnknownAction(_))));
    assert!(matches!(parse("naa { alphabet a; init s; state s {{(a, t)}}; }"), Err(Error::UnknownState(_))));
    assert!(matches!(parse("hml { alphabet a; init X; X = Y; }"), Err(Error::UnboundVariable(_))));
    assert!(matches!(
        parse("dmts { alphabet a; init s; must s {(a, s)}; }"),
        Err(Error::MustNotSupported { .. })
    ));
    assert!(parse_with("dmts { alphabet a; init s; must s {(a, s)}; }", SupportMode::Repair).is_ok());
    assert!(matches!(parse("mts { alphabet a; init s, t; }"), Err(Error::NotAnMts(_))));
    assert!(matches!(parse("lts { alphabet a; init; }"), Err(Error::InvariantViolation(_))));
    assert!(matches!(
        parse("lts { alphabet a; init s; may s a s; must s {}; }"),
        Err(Error::InvariantViolation(_))
    ));
}

#[test]
fn quoted_identifiers_and_comments() {
    let text = "// header\ndmts { alphabet a; init \"{s/t}\"; may \"{s/t}\" a \"may\"; // trailing\n}";
    let s = parse(text).unwrap();
    let out = serialize(&s);
    assert!(out.contains("may \"{s/t}\" a \"may\";"));
    assert_eq!(parse(&out).unwrap(), s);
}

#[test]
fn isolated_states_survive_round_trip() {
    let s = parse("dmts { alphabet a; init; state lonely; }").unwrap();
    let Spec::Dmts(d) = &s else { panic!() };
    assert_eq!(d.num_states(), 1);
    assert_eq!(serialize(&s), "dmts {\n  alphabet a;\n  init;\n  state lonely;\n}\n");
}

#[test]
fn serialization_is_canonical() {
    let a = parse("dmts { alphabet b, a; init y, x; may y b x; may x a y; must x {(a, y)}; }").unwrap();
    let b = parse("dmts { alphabet a, b; init x, y; must x {(a, y)}; may x a y; may y b x; }").unwrap();
    assert_eq!(serialize(&a), serialize(&b));
}

#[test]
fn dot_for_deadlock_and_until() {
    let dead = export_dot(&parse("lts { alphabet a; init i; }").unwrap());
    assert_eq!(dead.lines().filter(|l| l.trim() == "\"i\";").count(), 1);
    let until = export_dot(&parse(include_str!("../../../corpus/until.dmts")).unwrap());
    let state_nodes = until.lines().filter(|l| l.trim().ends_with("\";") && !l.contains("->") && !l.contains('[')).count();
    assert_eq!(state_nodes, 3);
    assert_eq!(until.matches("_init").count() / 2, 2);
    assert_eq!(until.lines().filter(|l| l.contains("_must") && l.contains("shape=point")).count(), 1);
}

fn any_kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Lts), Just(Kind::Mts), Just(Kind::Dmts), Just(Kind::Naa), Just(Kind::Hml)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn round_trip_is_identity(kind in any_kind(), seed in any::<u64>(), states in 1usize..5) {
        let p = GenParams::new(Alphabet::new(["a", "b", "c"]).unwrap()).with_states(states);
        let spec = gen_random(kind, &p, seed);
        let text = serialize(&spec);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(export_dot(&back), export_dot(&spec));
    }

    #[test]
    fn odd_identifiers_are_quoted_correctly(name in "[a-z\\\\\" {}/,()<>|&=;-]{1,8}") {
        let text = format!("lts {{ alphabet a; init {}; }}", modspec::text::quote_ident(&name));
        let Spec::Lts(l) = parse(&text).unwrap() else { panic!() };
        prop_assert_eq!(l.state_name(0), name.as_str());
    }
}
