use siegel_core::dims;
use siegel_core::exact::int;
use siegel_core::hecke2::{charpoly_hecke, eigenvalue_tp, eigenvalue_tp2, lift_check, linear_charpoly, Eigen, HeckeError, LiftKind};
use siegel_core::siegel::construct_named;

#[test]
fn charpoly_of_one_form_is_linear() {
    let f = construct_named("chi12_2", 6).unwrap();
    for p in [3, 5] {
        let lambda = eigenvalue_tp(&f, p).unwrap().eigenvalue().unwrap().clone();
        let rep = charpoly_hecke(std::slice::from_ref(&f), p).unwrap();
        assert_eq!(rep.eigen, Eigen::Charpoly(linear_charpoly(&lambda)));
    }
}

#[test]
fn eigenvalues_agree_across_components() {
    // eigenvalue_tp refuses to answer when two components disagree
    for id in ["chi12_2", "chi18_2", "chi20_2"] {
        let f = construct_named(id, 6).unwrap();
        for p in [3, 5] {
            assert!(eigenvalue_tp(&f, p).is_ok(), "{id} T{p}");
        }
    }
}

#[test]
fn wrong_elliptic_forms_break_the_yoshida_identity() {
    let f = construct_named("chi12_2", 9).unwrap();
    let right = lift_check(LiftKind::Yoshida, &f, 3, &[int(-1836), int(1236)]).unwrap();
    assert!(right.holds());
    let wrong = lift_check(LiftKind::Yoshida, &f, 3, &[int(-1836), int(1237)]).unwrap();
    assert!(!wrong.holds());
}

#[test]
fn square_operator_needs_an_odd_prime() {
    let f = construct_named("chi12_2", 6).unwrap();
    assert!(matches!(eigenvalue_tp2(&f, 4), Err(HeckeError::NotOddPrime(4))));
    assert!(matches!(eigenvalue_tp(&f, 9), Err(HeckeError::NotOddPrime(9))));
}

#[test]
fn low_precision_is_reported() {
    let f = construct_named("chi12_2", 4).unwrap();
    assert!(matches!(eigenvalue_tp(&f, 7), Err(HeckeError::Precision(..))));
}

#[test]
fn dimension_series_are_nonnegative() {
    for j in (0..=200).step_by(2) {
        assert!(dims::eps_weight2_series(j) >= 0, "j = {j}");
        assert!(dims::weight7_dim(j) >= 0, "j = {j}");
        assert!(dims::restriction_target_dim(j) >= 0, "j = {j}");
    }
    for k in (4..=200).step_by(2) {
        let (a, b) = dims::fricke_split(k).unwrap();
        assert!(a >= 0 && b >= 0, "k = {k}");
    }
}

#[test]
fn no_isotypic_forms_below_twelve() {
    for j in (0..12).step_by(2) {
        assert!(dims::conjecture_table(j).unwrap().is_zero(), "j = {j}");
    }
    assert!(!dims::conjecture_table(12).unwrap().is_zero());
}

#[test]
fn consistency_to_sixty() {
    let rep = dims::consistency_checks(60);
    assert!(rep.all_pass(), "{}", rep.to_json());
}
