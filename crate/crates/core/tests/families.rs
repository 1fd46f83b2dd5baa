mod common;

use metafib::families::{
    check_ic_restrictions_h, check_ic_restrictions_v, validate_params_h, validate_params_v,
    verify_family_end_to_end,
};
use metafib::{
    detect_interleaving, eval_single, presets, Family, FamilyFixture, FamilyParams, RecurrenceSpec,
};
use proptest::prelude::*;

#[test]
fn mutation_suite_is_fully_detected() {
    let suite = common::mutations();
    assert!(suite.len() >= 12);
    for (label, family, params, expected) in suite {
        let violations = match family {
            Family::V => validate_params_v(&params),
            Family::H => validate_params_h(&params),
        };
        let texts: Vec<String> = violations.iter().map(ToString::to_string).collect();
        assert!(texts.iter().any(|t| t == expected), "{label}: {texts:?}");
        assert!(family.derived_system(&params).is_err(), "{label}");
    }
}

#[test]
fn printed_prefixes_match_direct_evaluation() {
    for fx in FamilyFixture::all() {
        let n = fx.printed_prefix.len();
        let (buf, outcome) = eval_single(&fx.family.recurrence(), &fx.ic, n as u64).unwrap();
        assert!(outcome.is_alive(), "{}", fx.name);
        assert_eq!(buf.to_vec(), fx.printed_prefix, "{}", fx.name);
    }
    let lens: Vec<usize> = FamilyFixture::all()
        .iter()
        .map(|f| f.printed_prefix.len())
        .collect();
    assert_eq!(lens, vec![9, 22, 11, 24]);
}

#[test]
fn printed_prefixes_pass_restrictions() {
    for fx in FamilyFixture::all() {
        let check = fx
            .family
            .check_ic_restrictions(&fx.params, &fx.printed_prefix, 5_000)
            .unwrap();
        assert!(check.passed(), "{}: {:?}", fx.name, check.failure);
        assert_eq!(check.verified_through, 5_000);
    }
}

#[test]
fn broken_prefixes_name_the_restriction() {
    let v1 = FamilyFixture::v1();
    // position K+5-b4 = 2 carries a_f
    let mut p = v1.printed_prefix.clone();
    p[1] = 7;
    assert_eq!(
        check_ic_restrictions_v(&v1.params, &p, 100)
            .unwrap()
            .failure
            .unwrap()
            .restriction,
        1
    );
    // position K+6-b2 = 4 carries a_g
    let mut p = v1.printed_prefix.clone();
    p[3] = 8;
    assert_eq!(
        check_ic_restrictions_v(&v1.params, &p, 100)
            .unwrap()
            .failure
            .unwrap()
            .restriction,
        2
    );
    // V(K+3-b2) + V(K+8-b4) = V(1) + V(5) = 5m
    let mut p = v1.printed_prefix.clone();
    p[0] = 5;
    assert_eq!(
        check_ic_restrictions_v(&v1.params, &p, 100)
            .unwrap()
            .failure
            .unwrap()
            .restriction,
        3
    );
    // V(K+2-5) = b2-5
    let mut p = v1.printed_prefix.clone();
    p[6] = 2;
    assert_eq!(
        check_ic_restrictions_v(&v1.params, &p, 100)
            .unwrap()
            .failure
            .unwrap()
            .restriction,
        4
    );

    let h1 = FamilyFixture::h1();
    let mut p = h1.printed_prefix.clone();
    p[9] = 0; // H(K-2) = 5m
    let failure = check_ic_restrictions_h(&h1.params, &p, 100)
        .unwrap()
        .failure
        .unwrap();
    assert_eq!(failure.restriction, 6, "{failure}");
}

#[test]
fn wrong_parameters_fail_end_to_end() {
    let fx = FamilyFixture::v1();
    // valid parameters for a different family member
    let other = FamilyParams { b2: 7, ..fx.params };
    assert!(validate_params_v(&other).is_empty());
    let res = verify_family_end_to_end(Family::V, &fx.ic, &other, 1_000, None).unwrap();
    assert!(!res.passed());
}

#[test]
fn table_rows_reach_their_patterns() {
    for p in presets::table4().into_iter().chain(presets::table5()) {
        let (buf, outcome) = eval_single(&p.spec, &p.ic, 20_000).unwrap();
        assert!(outcome.is_alive(), "{}", p.name);
        let pattern = detect_interleaving(&buf, 5, 10_000, 20_000).unwrap();
        assert_eq!(
            Some(pattern.pattern_string().as_str()),
            p.expected_pattern,
            "{}",
            p.name
        );
    }
}

#[test]
fn v1_tail_classes() {
    let fx = FamilyFixture::v1();
    let (buf, _) = eval_single(&RecurrenceSpec::v(), &fx.ic, 10_000).unwrap();
    let p = detect_interleaving(&buf, 5, 5_000, 10_000).unwrap();
    // indices 0,1 mod 5 follow f and g; the rest are 5k+b2, 5m, 5k+b4
    assert_eq!(p.pattern_string(), "I,I,L,C,L");
}

proptest! {
    /// Prepending arbitrary terms shifts a V solution by their count while
    /// it lives. A reference below index 1 lands on filler in the shifted
    /// copy, so the copy can outlive the original but never dies sooner.
    #[test]
    fn index_shift_invariance(
        ic in prop::collection::vec(1i64..8, 4..10),
        filler in prop::collection::vec(-5i64..20, 1..6),
    ) {
        let v = RecurrenceSpec::v();
        let s = filler.len();
        let shifted_ic: Vec<i64> = filler.iter().chain(&ic).copied().collect();
        let (a, out_a) = eval_single(&v, &ic, 3_000).unwrap();
        let (b, out_b) = eval_single(&v, &shifted_ic, 3_000 + s as u64).unwrap();
        prop_assert_eq!(&b.to_vec()[s..s + a.len()], &a.to_vec()[..]);
        if let Some(d) = out_b.death_index() {
            prop_assert!(out_a.death_index().is_some_and(|da| d >= da + s as u64));
        }
    }
}

#[test]
fn shifted_fixture_keeps_its_family_form() {
    let fx = FamilyFixture::v1();
    for s in [1usize, 2, 5] {
        let ic: Vec<i64> = std::iter::repeat_n(0, s)
            .chain(fx.ic.iter().copied())
            .collect();
        let (buf, outcome) = eval_single(&RecurrenceSpec::v(), &ic, 20_000).unwrap();
        assert!(outcome.is_alive());
        let (orig, _) = eval_single(&RecurrenceSpec::v(), &fx.ic, 20_000 - s as u64).unwrap();
        assert_eq!(&buf.to_vec()[s..], &orig.to_vec()[..]);
    }
}
