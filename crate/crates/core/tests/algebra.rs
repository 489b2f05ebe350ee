use proptest::prelude::*;
use siegel_core::covariant::{eval_expr_specialized, generator, parse_expr, transvectant, GenId, GeneratorCache};
use siegel_core::exact::{format_rational, int, parse_rational, rat, sym_action, MPoly, SymVector, NVARS};
use siegel_core::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// A form of degree `m` in `x1, x2` only.
fn binary_form(m: u16) -> impl Strategy<Value = MPoly> {
    proptest::collection::vec(small_rational(), m as usize + 1).prop_map(move |cs| {
        MPoly::from_terms(cs.into_iter().enumerate().map(|(i, c)| {
            let mut e = [0u16; NVARS];
            e[7] = m - i as u16;
            e[8] = i as u16;
            (e, c)
        }))
    })
}

fn matrix() -> impl Strategy<Value = [[i64; 2]; 2]> {
    proptest::array::uniform2(proptest::array::uniform2(-5i64..=5))
}

fn matmul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

proptest! {
    #[test]
    fn rational_print_parse_round_trip(n in any::<i64>(), d in 1i64..1_000_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn rational_sums_are_exact(a in small_rational(), b in small_rational()) {
        let s = &a + &b;
        prop_assert_eq!(&s - &b, a);
    }

    #[test]
    fn sym_action_is_multiplicative(a in matrix(), b in matrix(), j in 0usize..=8,
                                    v in proptest::collection::vec(-20i64..=20, 9)) {
        let v = SymVector::from_ints(&v[..=j]);
        let lhs = sym_action(&matmul(&a, &b), j, &v).unwrap();
        let rhs = sym_action(&a, j, &sym_action(&b, j, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transvectant_zero_is_product((f, g) in (0u16..=6, 0u16..=6).prop_flat_map(|(m, n)| (binary_form(m), binary_form(n)))) {
        prop_assert_eq!(transvectant(&f, &g, 0).unwrap(), f.mul(&g));
    }

    #[test]
    fn transvectant_is_bilinear(f in binary_form(5), f2 in binary_form(5), g in binary_form(4),
                                a in small_rational(), b in small_rational(), k in 0u32..=4) {
        let lhs = transvectant(&f.scale(&a).add(&f2.scale(&b)), &g, k).unwrap();
        let rhs = transvectant(&f, &g, k).unwrap().scale(&a).add(&transvectant(&f2, &g, k).unwrap().scale(&b));
        prop_assert_eq!(&lhs, &rhs);
        let lhs = transvectant(&g, &f.scale(&a).add(&f2.scale(&b)), k).unwrap();
        let rhs = transvectant(&g, &f, k).unwrap().scale(&a).add(&transvectant(&g, &f2, k).unwrap().scale(&b));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn generators_have_their_bidegrees() {
    for id in GenId::all() {
        let c = generator(id);
        assert!(!c.poly.is_zero(), "{id} vanishes");
        assert_eq!(c.poly.degree_a(), Some(id.a), "{id}");
        assert_eq!(c.poly.degree_x(), Some(id.b), "{id}");
    }
}

fn discriminant(c10: &str) -> String {
    format!(
        "768 C_{{2,0}}^5 - 7625 C_{{4,0}}C_{{2,0}}^3 - 1875 (7 C_{{6,0}}C_{{2,0}}^2 - 10 C_{{4,0}}^2 C_{{2,0}} \
         - 30 C_{{6,0}}C_{{4,0}} - {c10} C_{{10,0}})"
    )
}

fn on_sextic(text: &str, a: [i64; 7]) -> MPoly {
    let mut cache = GeneratorCache::specialized(&a.map(int));
    eval_expr_specialized(&parse_expr(text).unwrap(), &mut cache).unwrap()
}

// With the generator normalizations used here the C_{10,0} coefficient of
// the discriminant is 15; the coefficient 13860 = 924 * 15 belongs to a
// C_{10,0} scaled down by C(12,6).
#[test]
fn discriminant_vanishes_on_double_roots() {
    let double_root = [[0, 0, 1, 2, -3, 5, 7], [0, 0, 4, -1, 0, 2, 1], [0, 0, -2, 3, 1, 1, -6]];
    for a in double_root {
        assert!(on_sextic(&discriminant("15"), a).is_zero(), "{a:?}");
        assert!(!on_sextic(&discriminant("13860"), a).is_zero(), "{a:?}");
    }
    assert!(!on_sextic(&discriminant("15"), [1, 0, 0, 0, 0, 0, 1]).is_zero());
}
