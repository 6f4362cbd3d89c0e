use modspec::algebra::{prune_dmts, reach_dmts};
use modspec::oracle::{gen_random, EnumBound, GenParams, Universe};
use modspec::refine::{mreq, refine_dmts};
use modspec::text::formula_to_string;
use modspec::translate::{bd, bh, db, db_with_limit, hd, normalize, NormalFormDecl, BOTTOM, TOP};
use modspec::{parse, Alphabet, Dmts, Error, HmlDecl, Kind, Lts, Moves, Naa, Spec};
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn corpus(name: &str) -> Spec {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn hml(name: &str) -> HmlDecl {
    match corpus(name) {
        Spec::Hml(h) => h,
        _ => unreachable!(),
    }
}

fn dmts(name: &str) -> Dmts {
    match corpus(name) {
        Spec::Mts(d) | Spec::Dmts(d) => d,
        _ => unreachable!(),
    }
}

/// The admissible sets of `s` re-derived from scratch: may-supported sets that
/// meet every must-set.
fn admissible_by_definition(d: &Dmts, s: usize) -> Vec<Moves> {
    let may = d.may(s);
    let mut out: Vec<Moves> = (0u32..1 << may.len())
        .map(|mask| (0..may.len()).filter(|i| mask >> i & 1 == 1).map(|i| may[i]).collect::<Moves>())
        .filter(|m| d.must(s).iter().all(|n| n.iter().any(|p| m.contains(p))))
        .collect();
    out.sort();
    out
}

/// The literal reading where some must-set has to be contained in the admissible set.
fn admissible_by_containment(d: &Dmts, s: usize) -> Vec<Moves> {
    let may = d.may(s);
    (0u32..1 << may.len())
        .map(|mask| (0..may.len()).filter(|i| mask >> i & 1 == 1).map(|i| may[i]).collect::<Moves>())
        .filter(|m| d.must(s).iter().any(|n| n.iter().all(|p| m.contains(p))))
        .collect()
}

fn sorted(f: &[Moves]) -> Vec<Moves> {
    let mut v = f.to_vec();
    v.sort();
    v
}

#[test]
fn db_of_invariance_matches_listing() {
    let n = db(&dmts("invariance.dmts")).unwrap();
    assert_eq!(n.tran(0), [vec![(0, 0)], vec![(0, 0), (1, 0)]]);
    let Spec::Naa(listed) = corpus("invariance.naa") else { unreachable!() };
    assert_eq!(n.tran(0), listed.tran(0));
}

#[test]
fn db_of_deadlock_admits_only_the_empty_set() {
    let d = Dmts::from_lts(&Lts::from_triples(ab(), "s", &[]).unwrap());
    assert_eq!(db(&d).unwrap().tran(0), [Moves::new()]);
}

#[test]
fn db_of_until() {
    let d = dmts("until.dmts");
    let n = db(&d).unwrap();
    let s1 = d.state_index("s1").unwrap();
    assert_eq!(n.tran(s1).len(), 8);
    // The state with the b-obligation yields the four b-sets of the listing.
    let s01 = d.state_index("s01").unwrap();
    assert_eq!(n.tran(s01).len(), 4);
    assert!(n.tran(s01).iter().all(|m| m.contains(&(1, s1))));
    let u = Universe::new(EnumBound::new(2, d.alphabet().clone())).unwrap();
    assert!(u.first_difference(&Spec::Naa(n), &corpus("until.naa")).unwrap().is_none());
}

#[test]
fn containment_reading_of_db_is_wrong() {
    // Under the containment reading a state without must-sets admits nothing,
    // so the universal state of the until example would become inconsistent.
    let d = dmts("until.dmts");
    let s1 = d.state_index("s1").unwrap();
    assert!(admissible_by_containment(&d, s1).is_empty());
    let n = db(&d).unwrap();
    assert_eq!(sorted(n.tran(s1)), admissible_by_definition(&d, s1));
    let u = Universe::new(EnumBound::new(2, d.alphabet().clone())).unwrap();
    let tran: Vec<Vec<Moves>> = (0..d.num_states()).map(|s| admissible_by_containment(&d, s)).collect();
    let literal = Naa::new(d.alphabet().clone(), d.states().to_vec(), d.initials().to_vec(), tran).unwrap();
    assert!(u.first_difference(&Spec::Naa(literal), &Spec::Dmts(d.clone())).unwrap().is_some());
    assert!(u.first_difference(&Spec::Naa(n), &Spec::Dmts(d)).unwrap().is_none());
}

#[test]
fn db_guard_trips_on_wide_states() {
    let many: Vec<(String, String, String)> = (0..17).map(|i| ("s".into(), "a".into(), format!("t{i}"))).collect();
    let triples: Vec<(&str, &str, &str)> = many.iter().map(|(s, a, t)| (s.as_str(), a.as_str(), t.as_str())).collect();
    let d = Dmts::from_lts(&Lts::from_triples(Alphabet::new(["a"]).unwrap(), "s", &triples).unwrap());
    assert!(matches!(db(&d), Err(Error::SizeGuard { .. })));
    assert!(db_with_limit(&d, 20).is_ok());
}

#[test]
fn bd_examples() {
    let a = Alphabet::new(["a"]).unwrap();
    let a_loop = Lts::from_triples(a.clone(), "i", &[("i", "a", "i")]).unwrap();
    let d = bd(&Naa::from_lts(&a_loop));
    assert_eq!(d.num_states(), 1);
    assert_eq!(d.must(0), [vec![(0, 0)]]);
    let bot = bd(&Naa::bottom(&a));
    assert!(bot.initials().is_empty());
    assert_eq!(bot.num_states(), 0);
    let Spec::Naa(inv) = corpus("invariance.naa") else { unreachable!() };
    let d = bd(&inv);
    assert_eq!(d.num_states(), 2);
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert!(u.first_difference(&Spec::Naa(inv), &Spec::Dmts(d)).unwrap().is_none());
}

#[test]
fn bh_examples() {
    let Spec::Naa(inv) = corpus("invariance.naa") else { unreachable!() };
    let h = bh(&inv);
    assert_eq!(
        formula_to_string(&h, h.body(0)),
        "<a>s0 & [a]s0 & [b]ff | <a>s0 & <b>s0 & [a]s0 & [b]s0"
    );
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert!(u.first_difference(&Spec::Hml(h), &corpus("invariance.hml")).unwrap().is_none());

    assert!(bh(&Naa::bottom(&ab())).initials().is_empty());

    let a = Alphabet::new(["a"]).unwrap();
    let top = bh(&Naa::top(&a));
    assert_eq!(formula_to_string(&top, top.body(0)), "[a]ff | <a>top & [a]top");
    let u1 = Universe::new(EnumBound::new(3, a)).unwrap();
    assert_eq!(u1.impl_set(&Spec::Hml(top)).unwrap().len(), u1.len());
}

#[test]
fn normal_form_of_example_2() {
    let nf = normalize(&hml("alternation.hml")).unwrap();
    assert!(nf.side_condition_holds());
    let x = (0..nf.num_vars()).find(|&v| nf.name(v) == "X").unwrap();
    let modspec::translate::NfBody::Clauses(clauses) = nf.body(x) else { panic!("X is not tt") };
    assert_eq!(clauses.len(), 2);
    let decl = nf.to_decl();
    assert_eq!(decl.num_vars(), 2);
    assert!(mreq(&Spec::Hml(decl), &corpus("alternation_normal.hml")).unwrap());
}

#[test]
fn normal_form_of_trivial_and_invariance() {
    let tt = parse("hml { alphabet a; init X; X = tt; }").unwrap();
    let Spec::Hml(h) = &tt else { unreachable!() };
    let nf = normalize(h).unwrap();
    assert!(nf.body(nf.initials()[0]).is_true());
    let nf = normalize(&hml("invariance.hml")).unwrap();
    let modspec::translate::NfBody::Clauses(c) = nf.body(nf.initials()[0]) else { panic!() };
    assert_eq!(c.len(), 1);
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert!(u.first_difference(&Spec::Hml(nf.to_decl()), &corpus("invariance.hml")).unwrap().is_none());
}

#[test]
fn hd_of_alternation_matches_the_expected_system() {
    let d = hd(&normalize(&hml("alternation.hml")).unwrap());
    assert!(d.state_index(TOP).is_some() && d.state_index(BOTTOM).is_some());
    let pruned = reach_dmts(&prune_dmts(&d));
    assert_eq!(pruned.num_states(), 4);
    assert_eq!(pruned.initials().len(), 2);
    let musts: Vec<usize> = (0..4).map(|s| pruned.must(s).iter().map(Vec::len).sum()).collect();
    let mut sizes = musts.clone();
    sizes.sort();
    assert_eq!(sizes, [0, 0, 1, 2]);
    // Mutual refinement with the expected system, written out by hand with may-transitions to top.
    let drawn = parse(
        "dmts { alphabet a, b; init x1, x2;
           may x1 a y1; may x1 a top; must x1 {(a, y1)};
           may x2 b top;
           may y1 b x1; may y1 b x2; may y1 b top; must y1 {(b, x1), (b, x2)};
           may top a top; may top b top; }",
    )
    .unwrap();
    let Spec::Dmts(drawn) = drawn else { unreachable!() };
    assert!(refine_dmts(&pruned, &drawn).unwrap().holds());
    assert!(refine_dmts(&drawn, &pruned).unwrap().holds());
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert!(u.first_difference(&Spec::Dmts(d), &corpus("alternation.hml")).unwrap().is_none());
}

#[test]
fn hd_of_tt_is_top() {
    let Spec::Hml(h) = parse("hml { alphabet a, b; init X; X = tt; }").unwrap() else { unreachable!() };
    let d = reach_dmts(&hd(&normalize(&h).unwrap()));
    assert_eq!(d.states(), [TOP]);
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert_eq!(u.impl_set(&Spec::Dmts(d)).unwrap().len(), u.len());
}

#[test]
fn hd_of_until_matches_the_expected_shape() {
    let d = hd(&normalize(&hml("until.hml")).unwrap());
    let u = Universe::new(EnumBound::new(2, d.alphabet().clone())).unwrap();
    assert!(u.first_difference(&Spec::Dmts(d.clone()), &corpus("until.dmts")).unwrap().is_none());
    let fig = dmts("until.dmts");
    let pruned = reach_dmts(&prune_dmts(&d));
    assert!(refine_dmts(&pruned, &fig).unwrap().holds());
}

#[test]
fn normal_form_rejects_non_normal_input() {
    assert!(matches!(NormalFormDecl::from_decl(&hml("alternation.hml")), Err(Error::NotNormalForm(_))));
    let nf = normalize(&hml("until.hml")).unwrap();
    let again = NormalFormDecl::from_decl(&nf.to_decl()).unwrap();
    assert!(mreq(&Spec::Hml(again.to_decl()), &Spec::Hml(nf.to_decl())).unwrap());
}

fn any_kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Lts), Just(Kind::Mts), Just(Kind::Dmts), Just(Kind::Naa), Just(Kind::Hml)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn db_sets_are_exactly_the_definition(seed in any::<u64>()) {
        let Spec::Dmts(d) = gen_random(Kind::Dmts, &GenParams::new(ab()).with_states(4), seed) else { unreachable!() };
        let n = db(&d).unwrap();
        for s in 0..d.num_states() {
            prop_assert_eq!(sorted(n.tran(s)), admissible_by_definition(&d, s));
        }
    }

    #[test]
    fn translations_preserve_membership(kind in any_kind(), seed in any::<u64>()) {
        let s = gen_random(kind, &GenParams::new(ab()), seed);
        let n = s.to_naa().unwrap();
        let views = [
            Spec::Naa(n.clone()),
            Spec::Dmts(s.to_dmts().unwrap()),
            Spec::Dmts(bd(&n)),
            Spec::Hml(bh(&n)),
            Spec::Dmts(hd(&normalize(&bh(&n)).unwrap())),
        ];
        let u = Universe::new(EnumBound::new(2, ab())).unwrap();
        let reference = u.membership(&s).unwrap();
        for v in &views {
            prop_assert_eq!(&u.membership(v).unwrap(), &reference, "{}", modspec::serialize(v));
        }
    }

    #[test]
    fn normal_forms_satisfy_the_side_condition(seed in any::<u64>()) {
        let Spec::Hml(h) = gen_random(Kind::Hml, &GenParams::new(ab()), seed) else { unreachable!() };
        let nf = normalize(&h).unwrap();
        prop_assert!(nf.side_condition_holds());
        let u = Universe::new(EnumBound::new(2, ab())).unwrap();
        prop_assert_eq!(u.membership(&Spec::Hml(nf.to_decl())).unwrap(), u.membership(&Spec::Hml(h)).unwrap());
    }
}
