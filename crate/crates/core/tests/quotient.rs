use modspec::algebra::{compose_naa, inconsistent_dmts, inconsistent_naa, prune_naa, single_initial};
use modspec::oracle::{gen_mts, gen_naa, EnumBound, GenParams, Universe};
use modspec::quotient::{disjointify, quotient_mts, quotient_naa, QuotientOptions};
use modspec::refine::{implements_dmts, implements_naa, mreq_naa, refine_dmts, refine_naa};
use modspec::translate::db;
use modspec::{parse, Alphabet, Dmts, Error, Lts, Naa, Spec};

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn params(states: usize) -> GenParams {
    GenParams::new(ab()).with_states(states)
}

fn corpus(name: &str) -> Dmts {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap().to_dmts().unwrap()
}

fn naa_of(text: &str) -> Naa {
    parse(text).unwrap().to_naa().unwrap()
}

fn lts_naa(l: &Lts) -> Naa {
    Naa::from_lts(l)
}

/// Checks `X ≤m S/T ⟺ X ∥ T ≤m S` for every implementation in `u` and for the
/// given extra specifications; returns the number of disagreements.
fn adjunction_failures(s: &Naa, t: &Naa, q: &Naa, u: &Universe, extra: &[Naa]) -> usize {
    let lts_fail = u
        .systems()
        .iter()
        .filter(|x| {
            let left = implements_naa(x, q).unwrap();
            let right = refine_naa(&compose_naa(&lts_naa(x), t).unwrap(), s).unwrap().holds();
            left != right
        })
        .count();
    let naa_fail = extra
        .iter()
        .filter(|x| {
            let left = refine_naa(x, q).unwrap().holds();
            let right = refine_naa(&compose_naa(x, t).unwrap(), s).unwrap().holds();
            left != right
        })
        .count();
    lts_fail + naa_fail
}

#[test]
fn disjointify_examples() {
    let n = naa_of("naa { alphabet a, b; init t; state t {{(a, u)}, {(a, u), (b, u)}}; state u {{}}; }");
    let d = disjointify(&n);
    assert_eq!(d.states(), ["t", "u", "u'"]);
    let t = d.state_index("t").unwrap();
    let (u, u2) = (d.state_index("u").unwrap(), d.state_index("u'").unwrap());
    assert_eq!(d.tran(t), [vec![(0, u)], vec![(0, u2), (1, u)]]);
    assert_eq!(d.tran(u2), d.tran(u));
    assert!(mreq_naa(&n, &d).unwrap());

    let disjoint = naa_of("naa { alphabet a; init t; state t {{}, {(a, t)}}; }");
    assert_eq!(disjointify(&disjoint), disjoint);

    for seed in 0..100 {
        let n = gen_naa(&params(3), seed);
        let d = disjointify(&n);
        assert!(mreq_naa(&n, &d).unwrap(), "seed {seed}");
        for s in 0..d.num_states() {
            let mut seen = std::collections::HashSet::new();
            assert!(d.tran(s).iter().flatten().all(|m| seen.insert(*m)));
        }
    }
}

#[test]
fn quotient_by_unit_is_thoroughly_equivalent() {
    let unit = lts_naa(&Lts::unit(&ab()));
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    for seed in 0..30 {
        let s = gen_naa(&params(3), seed);
        let q = quotient_naa(&s, &unit, &QuotientOptions::default()).unwrap();
        assert!(u.first_difference(&Spec::Naa(q), &Spec::Naa(s)).unwrap().is_none(), "seed {seed}");
    }
}

#[test]
fn top_over_top_is_universal() {
    let top = Naa::top(&ab());
    let q = quotient_naa(&top, &top, &QuotientOptions::default()).unwrap();
    let u = Universe::new(EnumBound::new(3, ab())).unwrap();
    assert!(u.systems().iter().all(|x| implements_naa(x, &q).unwrap()));
    for seed in 0..30 {
        assert!(refine_naa(&gen_naa(&params(3), seed), &q).unwrap().holds());
    }
    assert!(mreq_naa(&q, &top).unwrap());
}

#[test]
fn universal_state_is_named_by_the_empty_set() {
    // Nothing the divisor does can be blamed on the quotient once the dividend
    // accepts everything, so every successor is the empty pair set.
    let top = Naa::top(&ab());
    let t = lts_naa(&Lts::from_triples(ab(), "t", &[("t", "a", "t")]).unwrap());
    let q = quotient_naa(&top, &t, &QuotientOptions { prune: false, ..QuotientOptions::default() }).unwrap();
    assert!(q.states().iter().any(|n| n == "{}"));
    assert_eq!(q.state_name(q.initials()[0]), "{top/t}");
}

#[test]
fn naa_adjunction_on_random_pairs() {
    let u = Universe::new(EnumBound::new(2, ab())).unwrap();
    let extra: Vec<Naa> = (0..40).map(|i| gen_naa(&params(2), 9000 + i)).collect();
    // Pruning only preserves refinement from locally consistent automata.
    let consistent: Vec<Naa> = extra.iter().filter(|x| inconsistent_naa(x).iter().all(|b| !b)).cloned().collect();
    let mut checked = 0;
    for seed in 0..40 {
        let s = gen_naa(&params(2), seed);
        let t = gen_naa(&params(2), seed + 100);
        let q = match quotient_naa(&s, &t, &QuotientOptions::default()) {
            Ok(q) => q,
            Err(Error::SizeGuard { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        checked += 1;
        let raw = quotient_naa(&s, &t, &QuotientOptions { prune: false, ..QuotientOptions::default() }).unwrap();
        assert_eq!(adjunction_failures(&s, &t, &raw, &u, &extra), 0, "seed {seed}");
        assert_eq!(adjunction_failures(&s, &t, &q, &u, &consistent), 0, "seed {seed}");
        if !q.initials().is_empty() {
            assert!(refine_naa(&compose_naa(&q, &t).unwrap(), &s).unwrap().holds(), "maximality, seed {seed}");
        }
    }
    assert!(checked >= 30, "only {checked} pairs within the guards");
}

#[test]
fn every_multi_pair_state_refines_its_projections() {
    for seed in 0..40 {
        let s = single_initial(&gen_naa(&params(2), seed));
        let t = disjointify(&gen_naa(&params(2), seed + 100));
        let Ok(q) = quotient_naa(&s, &t, &QuotientOptions { prune: false, ..QuotientOptions::default() }) else {
            continue;
        };
        for (i, name) in q.states().iter().enumerate() {
            let parts: Vec<&str> = name.trim_matches(|c| c == '{' || c == '}').split(',').filter(|p| !p.is_empty()).collect();
            if parts.len() < 2 {
                continue;
            }
            let from = q.with_initials(&[i]).unwrap();
            for p in parts {
                let (sn, tn) = p.split_once('/').unwrap();
                let single = format!("{{{sn}/{tn}}}");
                let proj = quotient_naa(
                    &s.with_initials(&[s.state_index(sn).unwrap()]).unwrap(),
                    &t.with_initials(&[t.state_index(tn).unwrap()]).unwrap(),
                    &QuotientOptions { prune: false, ..QuotientOptions::default() },
                )
                .unwrap();
                assert_eq!(proj.state_name(proj.initials()[0]), single);
                assert!(refine_naa(&from, &proj).unwrap().holds(), "seed {seed}: {name} vs {single}");
            }
        }
    }
}

#[test]
fn quotient_guard_is_reported() {
    let top = Naa::top(&Alphabet::new(["a", "b", "c", "d", "e"]).unwrap());
    let opts = QuotientOptions { max_postran: 2, ..QuotientOptions::default() };
    let t = lts_naa(&Lts::unit(top.alphabet()));
    assert!(matches!(quotient_naa(&top, &t, &opts), Err(Error::SizeGuard { .. })));
    let s = Dmts::top(top.alphabet());
    let opts = QuotientOptions { max_states: 0, ..QuotientOptions::default() };
    let t = Dmts::from_lts(&Lts::unit(top.alphabet()));
    assert!(matches!(
        quotient_mts(s.as_mts().unwrap(), t.as_mts().unwrap(), &opts),
        Err(Error::SizeGuard { .. })
    ));
}

#[test]
fn raw_quotient_example_has_two_inconsistent_states() {
    let (s, t) = (corpus("quotient_s.mts"), corpus("quotient_t.mts"));
    let raw = quotient_mts(
        s.as_mts().unwrap(),
        t.as_mts().unwrap(),
        &QuotientOptions { prune: false, ..QuotientOptions::default() },
    )
    .unwrap();
    let bad: Vec<&str> = inconsistent_dmts(&raw)
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| raw.state_name(i))
        .collect();
    // Pairs are listed in canonical order, so `{s2/t1,s1/t2}` prints as below.
    assert_eq!(bad, ["{s1/t1,s1/t2}", "{s1/t2,s2/t1}"]);

    let pruned = quotient_mts(s.as_mts().unwrap(), t.as_mts().unwrap(), &QuotientOptions::default()).unwrap();
    let drawn = corpus("quotient_expected.dmts");
    assert!(refine_dmts(&pruned, &drawn).unwrap().holds() && refine_dmts(&drawn, &pruned).unwrap().holds());
}

#[test]
fn divisor_composed_with_quotient_recovers_dividend() {
    let (s, t) = (corpus("quotient_s.mts"), corpus("quotient_t.mts"));
    let q = quotient_mts(s.as_mts().unwrap(), t.as_mts().unwrap(), &QuotientOptions::default()).unwrap();
    let back = compose_naa(&db(&t).unwrap(), &db(&q).unwrap()).unwrap();
    assert!(mreq_naa(&back, &db(&s).unwrap()).unwrap());
}

#[test]
fn mts_adjunction_and_agreement_with_the_naa_quotient() {
    let u = Universe::new(EnumBound::new(2, ab())).unwrap();
    let mut checked = 0;
    for seed in 0..40 {
        let s = gen_mts(&params(2), seed);
        let t = gen_mts(&params(2), seed + 100);
        let q = match quotient_mts(s.as_mts().unwrap(), t.as_mts().unwrap(), &QuotientOptions::default()) {
            Ok(q) => q,
            Err(Error::SizeGuard { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        checked += 1;
        let (sn, tn) = (db(&s).unwrap(), db(&t).unwrap());
        for x in u.systems() {
            let left = implements_dmts(x, &q).unwrap();
            let right = refine_naa(&compose_naa(&tn, &lts_naa(x)).unwrap(), &sn).unwrap().holds();
            assert_eq!(left, right, "seed {seed}, X = {}", Spec::Lts(x.clone()));
        }
        let qn = quotient_naa(&sn, &tn, &QuotientOptions::default()).unwrap();
        assert!(u.first_difference(&Spec::Dmts(q), &Spec::Naa(qn)).unwrap().is_none(), "seed {seed}");
    }
    assert!(checked >= 30, "only {checked} pairs within the guards");
}

#[test]
fn residuation_identities() {
    let mut checked = 0;
    let u = Universe::new(EnumBound::new(2, ab())).unwrap();
    for seed in 0..15 {
        let s = gen_naa(&params(2), seed);
        let t1 = gen_naa(&params(2), seed + 100);
        let t2 = gen_naa(&params(2), seed + 200);
        let opts = QuotientOptions::default();
        let Ok(both) = compose_naa(&t1, &t2).and_then(|t| quotient_naa(&s, &t, &opts)) else {
            continue;
        };
        // The inner quotient stays unpruned: `X ∥ T2` need not be locally consistent.
        let raw = QuotientOptions { prune: false, ..opts };
        let Ok(step) = quotient_naa(&s, &t1, &raw).and_then(|q| quotient_naa(&q, &t2, &opts)) else {
            continue;
        };
        assert!(u.first_difference(&Spec::Naa(both), &Spec::Naa(step)).unwrap().is_none(), "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} triples within the guards");
}

#[test]
fn several_dividend_initial_states() {
    // Neither initial state of the dividend refines the other, and the divisor
    // is the unit, so the quotient must keep both alternatives apart.
    let s = naa_of("naa { alphabet a, b; init p, q; state p {{(a, p)}}; state q {{(b, q)}}; }");
    let unit = lts_naa(&Lts::unit(&ab()));
    let q = quotient_naa(&s, &unit, &QuotientOptions::default()).unwrap();
    assert_eq!(q.initials().len(), 2);
    let u = Universe::new(EnumBound::new(2, ab())).unwrap();
    assert_eq!(adjunction_failures(&s, &unit, &q, &u, &[s.clone()]), 0);

    let t = naa_of("naa { alphabet a, b; init x, y; state x {{(a, x)}}; state y {{(b, y)}}; }");
    let q = quotient_naa(&s, &t, &QuotientOptions::default()).unwrap();
    let raw = quotient_naa(&s, &t, &QuotientOptions { prune: false, ..QuotientOptions::default() }).unwrap();
    assert_eq!(raw.initials().len(), 4);
    assert_eq!(adjunction_failures(&s, &t, &q, &u, &[]), 0);

    let none = naa_of("naa { alphabet a, b; init; state p {{}}; }");
    assert!(quotient_naa(&none, &unit, &QuotientOptions::default()).unwrap().initials().is_empty());
    let no_divisor = naa_of("naa { alphabet a, b; init; state p {{}}; }");
    let q = quotient_naa(&s, &no_divisor, &QuotientOptions::default()).unwrap();
    assert_eq!(q.state_name(q.initials()[0]), "{}");
}

#[test]
fn pruned_quotient_has_no_empty_families() {
    for seed in 0..40 {
        let s = gen_naa(&params(2), seed);
        let t = gen_naa(&params(2), seed + 100);
        if let Ok(q) = quotient_naa(&s, &t, &QuotientOptions::default()) {
            assert_eq!(prune_naa(&q), q);
        }
    }
}
