use congruence_core::exact::{parse_rational, rat, reduce_mod_pk};
use congruence_core::suite::{
    run_prime, run_suite, summarize, verify_statement, ASeq, ParamDomain, SideCondition, XPolicy,
};
use congruence_core::{
    catalog, represent_form, CheckRecord, Filter, Form, Kind, Params, PrimeConstraint, PrimeRange,
    SuiteConfig,
};
use proptest::prelude::*;

fn x_params(x: congruence_core::Rational) -> Params {
    Params {
        x: Some(x),
        ..Params::default()
    }
}

fn find(id: &str) -> usize {
    catalog().iter().position(|s| s.id == id).unwrap()
}

#[test]
fn catalog_shape() {
    let cat = catalog();
    assert_eq!(cat.len(), 92);
    assert!(cat.windows(2).all(|w| w[0].id < w[1].id));
    assert_eq!(cat[find("thm1.2/eq1.11")].e_max, 2);
    assert_eq!(cat[find("thm1.4/eq1.21")].e_max, 3);
    assert_eq!(cat[find("conj6.11/a")].e_max, 4);
    assert_eq!(cat[find("conj6.11/a")].prime_cap, Some(100));
    assert_eq!(cat[find("rem1.1a/int")].params, ParamDomain::Residues);
    assert!(cat
        .iter()
        .all(|s| !s.quote.is_empty() && !s.paper_ref.is_empty()));
}

#[test]
fn delannoy_alternating_sum_at_five() {
    let cat = catalog();
    let r = verify_statement(
        &cat,
        "thm1.2/eq1.11",
        5,
        &x_params(rat(1, 1)),
        &SuiteConfig::default(),
    )
    .unwrap();
    assert_eq!((r.lhs, r.rhs, r.pass, r.e), (Some(24), Some(24), true, 2));
}

#[test]
fn wolstenholme_at_seven() {
    let cat = catalog();
    let r = verify_statement(
        &cat,
        "wolstenholme/H",
        7,
        &Params::default(),
        &SuiteConfig::default(),
    )
    .unwrap();
    assert_eq!((r.lhs, r.rhs, r.pass), (Some(0), Some(0), true));
    // H_6 = 49/20
    assert_eq!(reduce_mod_pk(&rat(49, 20), 7, 2).unwrap().value(), 0);
}

#[test]
fn first_product_sum_at_three() {
    let cat = catalog();
    let a = Params {
        x: Some(rat(0, 1)),
        y: Some(rat(1, 1)),
        ..Params::default()
    };
    let r = verify_statement(&cat, "thm1.1/eq1.8", 3, &a, &SuiteConfig::default()).unwrap();
    assert_eq!((r.lhs, r.rhs, r.pass), (Some(1), Some(1), true));
}

#[test]
fn conjecture_record_never_panics() {
    let cat = catalog();
    let r = verify_statement(
        &cat,
        "conj6.14i",
        7,
        &x_params(rat(-1, 4)),
        &SuiteConfig::default(),
    )
    .unwrap();
    assert_eq!(r.kind, Kind::Conjecture);
    assert!(r.lhs.is_some() && r.error.is_none());
    assert!(verify_statement(
        &cat,
        "no/such",
        7,
        &Params::default(),
        &SuiteConfig::default()
    )
    .is_err());
}

#[test]
fn quadratic_forms() {
    let r = represent_form(7, Form::X2Plus6Y2).unwrap();
    assert_eq!((r.x, r.y), (1, 1));
    let r = represent_form(5, Form::TwoX2Plus3Y2).unwrap();
    assert_eq!((r.x, r.y), (1, 1));
    let r = represent_form(7, Form::X2Plus3Y2).unwrap();
    assert_eq!((r.x, r.y), (-2, 1));
    assert!(represent_form(5, Form::X2Plus3Y2).is_none());
    for p in [13u64, 19, 31, 37, 43, 61, 67, 73, 79, 97] {
        let r = represent_form(p, Form::X2Plus3Y2).unwrap();
        assert_eq!(r.x * r.x + 3 * r.y * r.y, p as i64);
        assert_eq!(r.x.rem_euclid(3), 1);
    }
}

#[test]
fn proven_sweep_to_fifty() {
    let cat = catalog();
    let range = PrimeRange::new(3, 50, PrimeConstraint::AtLeast3).unwrap();
    for kind in [Kind::Theorem, Kind::Lemma, Kind::Corollary, Kind::Remark] {
        let filter = Filter {
            kinds: vec![kind],
            ids: vec![],
        };
        let mut cache = Default::default();
        let (summary, records) =
            run_suite(&cat, &filter, &range, &SuiteConfig::default(), &mut cache).unwrap();
        assert!(!summary.failed, "{kind:?}: {:?}", first_bad(&records));
        assert!(records.iter().all(|r| r.error.is_none()));
    }
}

fn first_bad(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records.iter().find(|r| r.is_hard_failure())
}

#[test]
fn side_condition_skips_at_five() {
    let cat = catalog();
    let range = PrimeRange::new(5, 5, PrimeConstraint::AtLeast3).unwrap();
    let filter = Filter {
        kinds: vec![],
        ids: vec!["thm1.4/*".into()],
    };
    let cfg = SuiteConfig {
        x_policy: XPolicy::Residues,
        ..SuiteConfig::default()
    };
    let (summary, _) = run_suite(&cat, &filter, &range, &cfg, &mut Default::default()).unwrap();
    let t = summary
        .tallies
        .iter()
        .find(|t| t.id == "thm1.4/eq1.20")
        .unwrap();
    assert_eq!((t.skip, t.pass, t.fail), (1, 4, 0));
}

#[test]
fn skips_are_sound() {
    let cat = catalog();
    let range = PrimeRange::new(3, 23, PrimeConstraint::AtLeast3).unwrap();
    let cfg = SuiteConfig::default();
    let (_, records) = run_suite(
        &cat,
        &Filter::default(),
        &range,
        &cfg,
        &mut Default::default(),
    )
    .unwrap();
    let mut side_skips = 0;
    for r in records.iter().filter(|r| r.skip) {
        let stmt = &cat[r.order.0];
        if stmt.side == SideCondition::None {
            continue;
        }
        let params = &cfg.params_for(stmt, r.p)[r.order.2];
        if !stmt.side.holds(params, r.p) {
            side_skips += 1;
        } else {
            // the only other reason is a branch that does not apply at this p
            assert!(r
                .extra
                .iter()
                .any(|(k, v)| k == "skip" && v == "no branch applies"));
        }
    }
    assert!(side_skips > 0);
}

#[test]
fn conjecture_tallies() {
    let cat = catalog();
    let range = PrimeRange::new(5, 60, PrimeConstraint::AtLeast3).unwrap();
    let filter = Filter {
        kinds: vec![Kind::Conjecture],
        ids: vec![],
    };
    let (summary, records) = run_suite(
        &cat,
        &filter,
        &range,
        &SuiteConfig::default(),
        &mut Default::default(),
    )
    .unwrap();
    assert_eq!(
        summary.tallies.len(),
        cat.iter().filter(|s| s.kind == Kind::Conjecture).count()
    );
    assert!(!summary.failed);
    assert!(records.iter().all(|r| r.kind == Kind::Conjecture));
}

#[test]
fn every_branch_is_reached() {
    let cat = catalog();
    let cfg = SuiteConfig::default();
    let idx = find("thm1.2/eq1.13");
    let (records, _) = run_prime(&cat, &[idx], 7, &cfg, Default::default()).unwrap();
    for branch in ["x=0", "x=-1", "generic"] {
        assert!(
            records
                .iter()
                .any(|r| r.pass && r.extra.iter().any(|(k, v)| k == "branch" && v == branch)),
            "{branch}"
        );
    }
    // both branches of the d_k(x)^2 sum and of the S_k(x,y)^2 sum
    for id in ["thm1.2/eq1.12", "thm1.1/eq1.10", "conj6.14i"] {
        let (records, _) = run_prime(&cat, &[find(id)], 7, &cfg, Default::default()).unwrap();
        assert!(
            records
                .iter()
                .any(|r| r.x.as_deref() == Some("3/1") && r.pass),
            "{id}"
        );
        assert!(
            records
                .iter()
                .any(|r| r.x.as_deref() == Some("1/1") && r.pass),
            "{id}"
        );
    }
    // the p = 1 and p = 2 (mod 3) branches of the form statements
    for p in [7u64, 11, 13, 17, 19, 23] {
        let (records, _) = run_prime(
            &cat,
            &[find("conj6.4/a"), find("conj6.9/a")],
            p,
            &cfg,
            Default::default(),
        )
        .unwrap();
        assert!(records.iter().all(|r| !r.skip));
        let has_form = records
            .iter()
            .all(|r| r.extra.iter().any(|(k, _)| k == "form"));
        assert_eq!(has_form, p % 3 == 1, "p={p}");
    }
}

#[test]
fn sharper_integer_form() {
    let cat = catalog();
    let (records, _) = run_prime(
        &cat,
        &[find("rem1.1a/int")],
        11,
        &SuiteConfig::default(),
        Default::default(),
    )
    .unwrap();
    assert_eq!(records.len(), 11);
    assert!(records.iter().all(|r| r.pass && r.e == 3));
}

#[test]
fn injected_fault_fails_the_run() {
    let cat = catalog();
    let range = PrimeRange::new(3, 11, PrimeConstraint::AtLeast3).unwrap();
    let filter = Filter {
        kinds: vec![],
        ids: vec!["thm1.2".into()],
    };
    let cfg = SuiteConfig {
        fault: Some("thm1.2/eq1.11".into()),
        ..SuiteConfig::default()
    };
    let (summary, records) =
        run_suite(&cat, &filter, &range, &cfg, &mut Default::default()).unwrap();
    assert!(summary.failed);
    assert!(records
        .iter()
        .filter(|r| r.stmt == "thm1.2/eq1.11")
        .all(|r| !r.pass));
    assert!(records
        .iter()
        .filter(|r| r.stmt != "thm1.2/eq1.11")
        .all(|r| r.pass || r.skip));
}

#[test]
fn id_patterns() {
    assert!(Filter::id_matches("thm1.2/eq1.11", "thm1.2/eq1.11"));
    assert!(Filter::id_matches("thm1.4/*", "thm1.4/eq1.20"));
    assert!(Filter::id_matches("conj6.11", "conj6.11/c"));
    assert!(Filter::id_matches("*eq1.1*", "thm1.1/eq1.10"));
    assert!(!Filter::id_matches("conj6.1", "conj6.11/c"));
    assert!(!Filter::id_matches("thm1.4/*", "thm1.2/eq1.11"));
    assert!(Filter::id_matches("conj6.10", "conj6.10"));
}

#[test]
fn deterministic_order() {
    let cat = catalog();
    let range = PrimeRange::new(3, 13, PrimeConstraint::AtLeast3).unwrap();
    let cfg = SuiteConfig::default();
    let (_, a) = run_suite(
        &cat,
        &Filter::default(),
        &range,
        &cfg,
        &mut Default::default(),
    )
    .unwrap();
    let (_, b) = run_suite(
        &cat,
        &Filter::default(),
        &range,
        &cfg,
        &mut Default::default(),
    )
    .unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].order < w[1].order));
    assert_eq!(summarize(&cat, &a).tallies.len(), cat.len());
}

const SMALL_PRIMES: [u64; 9] = [3, 5, 7, 11, 13, 17, 19, 23, 29];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modular_matches_exact(idx in 0usize..92, pi in 0usize..9, pick in 0usize..64) {
        let cat = catalog();
        let stmt = &cat[idx];
        let p = SMALL_PRIMES[pi];
        let fast = SuiteConfig::default();
        let slow = SuiteConfig { exact: true, ..SuiteConfig::default() };
        let params = fast.params_for(stmt, p);
        prop_assume!(!params.is_empty());
        let a = &params[pick % params.len()];
        let r1 = verify_statement(&cat, stmt.id, p, a, &fast).unwrap();
        let r2 = verify_statement(&cat, stmt.id, p, a, &slow).unwrap();
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn verdict_depends_on_x_mod_pe(pick in 0usize..1000, pi in 0usize..6, x in 0i64..40, t in -3i64..=3) {
        let cat = catalog();
        let eligible: Vec<_> = cat
            .iter()
            .filter(|s| s.kind.is_proven() && matches!(s.params, ParamDomain::X | ParamDomain::XA))
            .collect();
        let stmt = eligible[pick % eligible.len()];
        let p = SMALL_PRIMES[pi];
        let cfg = SuiteConfig::default();
        let base = Params { x: Some(rat(x, 1)), a: Some(ASeq::Random(1)), ..Params::default() };
        let shifted_x = rat(x + t * (p as i64).pow(stmt.e_max), 1);
        let shifted = Params { x: Some(shifted_x), ..base.clone() };
        let r1 = verify_statement(&cat, stmt.id, p, &base, &cfg).unwrap();
        let r2 = verify_statement(&cat, stmt.id, p, &shifted, &cfg).unwrap();
        prop_assert_eq!(r1.pass, r2.pass);
        prop_assert_eq!(r1.skip, r2.skip);
    }
}

#[test]
fn rational_panel_is_filtered() {
    let cfg = SuiteConfig::default();
    let cat = catalog();
    let stmt = &cat[find("thm1.2/eq1.11")];
    let xs: Vec<_> = cfg
        .params_for(stmt, 3)
        .into_iter()
        .map(|a| a.x.unwrap())
        .collect();
    assert!(xs.contains(&parse_rational("-1/2").unwrap()));
    assert!(!xs.contains(&parse_rational("-1/3").unwrap()));
    assert_eq!(xs.len(), 3 + 4);
}
