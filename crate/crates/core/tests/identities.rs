use congruence_core::identity::{
    check_int_valued, identity_catalog, int_valued_claims, verify_identity,
    verify_u_recurrence, IntValuedLimits,
};

#[test]
fn identity_catalog_certifies_to_eight() {
    for stmt in identity_catalog() {
        let r = verify_identity(&stmt, 8).unwrap();
        assert!(r.pass, "{} failed: {:?}", stmt.id, r.counterexample);
        assert!(r.tuples_checked > 0, "{}", stmt.id);
    }
}

#[test]
fn ljunggren_instance_to_twenty() {
    let stmt = identity_catalog()
        .into_iter()
        .find(|s| s.id == "rem6.2/ljunggren")
        .unwrap();
    assert!(verify_identity(&stmt, 20).unwrap().pass);
}

#[test]
fn recurrence_to_eight() {
    let r = verify_u_recurrence(8);
    assert!(r.pass && r.base_cases, "{:?}", r.failures);
}

#[test]
fn int_valued_claims_default_limits() {
    let claims = int_valued_claims(IntValuedLimits::default());
    let mut ids: Vec<&str> = claims.iter().map(|c| c.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(
        ids,
        [
            "conj6.12a",
            "conj6.12b",
            "conj6.12c",
            "conj6.12d",
            "conj6.12e",
            "conj6.12f",
            "conj6.12g",
            "conj6.12h",
            "conj6.14ii",
            "conj6.1i",
            "conj6.1ii",
            "conj6.4c",
        ]
    );
    for c in &claims {
        let r = check_int_valued(c).unwrap();
        assert!(r.pass, "{} {}: {:?}", c.id, c.label, r.detail);
    }
}
