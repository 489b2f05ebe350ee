use proptest::prelude::*;
use siegel_core::covariant::parse_expr;
use siegel_core::exact::{int, rat, SymVector};
use siegel_core::fseries2::Idx;
use siegel_core::siegel::{cached_base, construct_named, mu, mu_by_substitution, NAMED_FORMS};
use siegel_core::theta2::BaseForm;
use siegel_core::{FSeries2, Rational};
use num_integer::Integer;

fn term(j: usize) -> impl Strategy<Value = ((i64, i64, i64), SymVector)> {
    (0i64..=4, 0i64..=4, proptest::collection::vec((-9i64..=9, 1i64..=3), j + 1)).prop_flat_map(|(n1, n3, v)| {
        let b = ((4 * n1 * n3) as f64).sqrt() as i64;
        let v = SymVector::new(v.into_iter().map(|(a, d)| rat(a, d)).collect());
        (-b..=b).prop_map(move |n2| ((n1, n2, n3), v.clone()))
    })
}

fn series(j: usize) -> impl Strategy<Value = FSeries2> {
    proptest::collection::vec(term(j), 0..6).prop_map(move |ts| {
        let ts = ts.into_iter().filter(|((a, b, c), _)| Idx::new(*a, *b, *c).in_cone());
        FSeries2::from_rational_terms(j, 4, 0, ts).unwrap()
    })
}

/// Leading term `(a, b, a)` below every other term in both `n1` and `n3`.
fn divisor() -> impl Strategy<Value = FSeries2> {
    (0i64..=1, -1i64..=1, 1i64..=5, proptest::collection::vec(term(0), 0..5)).prop_map(|(a, b, c, rest)| {
        let lead = ((a, a * b, a), SymVector::new(vec![int(c)]));
        let rest = rest.into_iter().filter(|((n1, n2, n3), _)| *n1 > a && *n3 >= a && Idx::new(*n1, *n2, *n3).in_cone());
        FSeries2::from_rational_terms(0, 4, 0, std::iter::once(lead).chain(rest)).unwrap()
    })
}

proptest! {
    #[test]
    fn mul_is_commutative(f in series(2), g in series(1)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn mul_is_associative(f in series(1), g in series(0), h in series(2)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn div_undoes_mul(f in series(3), g in divisor()) {
        let q = f.mul(&g).div_exact(&g).unwrap();
        prop_assert!(q.agrees_with(&f));
    }

    #[test]
    fn restriction_is_multiplicative(f in series(2), g in series(1)) {
        prop_assert_eq!(f.mul(&g).restrict_diagonal(), f.restrict_diagonal().mul(&g.restrict_diagonal()));
    }
}

#[test]
fn chi5_squared_is_chi10() {
    let chi5 = cached_base(BaseForm::Chi5, 8).unwrap();
    let chi10 = cached_base(BaseForm::Chi10, 8).unwrap();
    assert!(chi5.mul(&chi5).series.agrees_with(&chi10.series));
}

#[test]
fn base_forms_vanish_on_the_diagonal_and_have_their_symmetries() {
    for which in [BaseForm::Chi5, BaseForm::Chi10] {
        assert!(cached_base(which, 8).unwrap().series.restrict_diagonal().is_zero(), "{}", which.name());
    }
    for which in BaseForm::ALL {
        let f = cached_base(which, 6).unwrap();
        assert!(f.check_iota_symmetry(), "{}", which.name());
        assert!(f.check_support_parity(), "{}", which.name());
    }
}

fn odd(x: &Rational) -> bool {
    x.is_integer() && x.to_integer().is_odd()
}

#[test]
fn base_form_support() {
    for which in [BaseForm::Chi5, BaseForm::Chi6_3] {
        let f = cached_base(which, 6).unwrap();
        for (n, _) in f.series.terms() {
            assert!(odd(&n[0]) && odd(&n[2]), "{} at {n:?}", which.name());
        }
    }
    for (n, _) in cached_base(BaseForm::Psi4, 6).unwrap().series.terms() {
        assert!(n[0].is_integer() && !odd(&n[0]) && n[2].is_integer() && !odd(&n[2]), "psi4 at {n:?}");
    }
}

#[test]
fn restriction_is_multiplicative_on_base_forms() {
    let chi5 = cached_base(BaseForm::Chi5, 6).unwrap().series;
    let psi4 = cached_base(BaseForm::Psi4, 6).unwrap().series;
    let prod = chi5.mul(&psi4);
    assert_eq!(prod.restrict_diagonal(), chi5.restrict_diagonal().mul(&psi4.restrict_diagonal()));
    let sq = psi4.mul(&psi4);
    assert_eq!(sq.restrict_diagonal(), psi4.restrict_diagonal().mul(&psi4.restrict_diagonal()));
    assert!(!sq.restrict_diagonal().is_zero());
}

#[test]
fn mu_images_vanish_at_infinity() {
    for text in ["C_{2,0}", "C_{3,12}", "C_{1,6}C_{3,8}", "C_{1,6}^2 C_{2,0} + C_{2,4}C_{2,8} - 2 C_{1,6}C_{3,6}"] {
        let e = parse_expr(text).unwrap();
        let a = e.bidegree().unwrap().0 as i64;
        let f = mu(&e, 7).unwrap();
        assert!(!f.series.is_zero(), "{text}");
        for (n, _) in f.series.terms() {
            assert!(n[0] >= int(a) && n[2] >= int(a), "{text} has a term at {n:?}");
        }
    }
}

#[test]
fn series_mu_agrees_with_substitution() {
    for text in ["C_{2,0}", "C_{2,4}", "C_{3,8}", "C_{1,6}^2 C_{2,0} - 5 C_{2,4}C_{2,8}", "C_{1,6}C_{2,8}"] {
        let e = parse_expr(text).unwrap();
        let a = mu(&e, 5).unwrap();
        let b = mu_by_substitution(&e, 5).unwrap();
        assert!(a.series.agrees_with(&b.series), "{text}");
    }
}

#[test]
fn named_forms_have_iota_symmetry_and_parity() {
    for nf in NAMED_FORMS.iter().filter(|n| !n.stretch) {
        let f = construct_named(nf.id, 5).unwrap();
        assert!(f.check_iota_symmetry(), "{}", nf.id);
        assert!(f.check_support_parity(), "{}", nf.id);
        assert_eq!(f.provenance[0], format!("named form {}", nf.id));
    }
}

#[test]
fn precision_ledger() {
    // chi12_2 is mu(C_{3,12}) / chi10: the division costs two
    let f = construct_named("chi12_2", 6).unwrap();
    assert_eq!(f.prec(), 6);
    let g = mu(&parse_expr("C_{3,12}").unwrap(), 6).unwrap();
    let q = g.div(&cached_base(BaseForm::Chi10, 6).unwrap(), "chi10").unwrap();
    assert_eq!(q.prec(), 4);
    assert!(q.series.ratio_to(&f.series).is_some());
}
