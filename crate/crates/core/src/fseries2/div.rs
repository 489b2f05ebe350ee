use super::conv::Cone;
use super::{FSeries2, Idx, SeriesError};
use crate::exact::{format_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// The unique `H` with `F = G H`, for scalar `G`, by elimination in the
/// monomial order `(n1, n3, -n2)`.
///
/// The quotient is solved cell by cell from the leading term `g0` of `G`;
/// afterwards every remainder cell inside the checkable region must vanish,
/// otherwise `F` is not a multiple of `G` and `NonDivisible` is returned.
/// Quotient cells are only solved inside the semidefinite cone, so a quotient
/// that would need support outside the cone also surfaces as a remainder.
///
/// Precision: with `w = max(0, ord F - ord G)` the checkable region is
/// `n1, n3 <= min(prec F, prec G + w)` and the quotient is certified up to
/// that bound minus the diagonal entries of `g0`. Every term of `G` must
/// have `n1 >= g0.n1` and `n3 >= g0.n3`, as for `chi5` and `chi10`; otherwise
/// the quotient is not determined inside a box and `Shape` is returned.
pub(super) fn div_exact(f: &FSeries2, g: &FSeries2) -> Result<FSeries2, SeriesError> {
    if g.j != 0 {
        return Err(SeriesError::Shape("divisor must be scalar-valued".into()));
    }
    let (g0, lead) = match g.coeffs.iter().next() {
        Some((n, v)) => (*n, v[0].clone()),
        None => return Err(SeriesError::ZeroDivisor),
    };
    if g.coeffs.keys().any(|n| n.n3 < g0.n3) {
        return Err(SeriesError::Shape(format!("divisor term below the leading index {g0:?} in n3")));
    }
    let d = f.denom.lcm(&g.denom);
    let f_scale = d / g.denom;
    let g0 = Idx::new(g0.n1 * f_scale, g0.n2 * f_scale, g0.n3 * f_scale);
    let (f, g) = (f.with_denom(d), g.with_denom(d));
    let order = (f.order - g.order).max(0);
    let check = f.prec.min(g.prec + order);
    let lim = check * d;
    let loss = (g0.n1.max(g0.n3) + d - 1) / d;
    let prec = check - loss;
    if prec < 0 {
        return Err(SeriesError::Precision(format!(
            "dividend precision {} too small for a divisor with leading index {g0:?}",
            f.prec
        )));
    }
    let cone = Cone::new(lim);
    let len = f.j + 1;
    let mut gs: Vec<(Idx, BigInt)> = g
        .coeffs
        .iter()
        .filter(|(n, _)| n.n1 <= lim && n.n3 <= lim)
        .map(|(n, v)| (*n, v[0].clone()))
        .collect();
    gs.sort_by_key(|(n, _)| (n.n1, n.n3));

    let (quot, bad) = if lead.abs().is_one() {
        eliminate(&f, &gs, g0, &lead, &cone, len)
    } else {
        let gr: Vec<(Idx, Rational)> = gs.iter().map(|(n, c)| (*n, Rational::from_integer(c.clone()))).collect();
        eliminate_rational(&f, &gr, g0, &Rational::from_integer(lead.clone()), &cone, len)
    };
    if let Some(n) = bad {
        let dd = BigInt::from(d);
        let show = [n.n1, n.n2, n.n3]
            .iter()
            .map(|&x| format_rational(&Rational::new(BigInt::from(x), dd.clone())))
            .collect::<Vec<_>>()
            .join(",");
        return Err(SeriesError::NonDivisible(show));
    }
    let (coeffs, scale) = quot;
    let mut h = FSeries2 { j: f.j, denom: d, prec: check, order, scale: &f.scale / &g.scale * scale, coeffs };
    h.normalize();
    Ok(h.truncate(prec))
}

type Quotient = (BTreeMap<Idx, Vec<BigInt>>, Rational);

fn residual<T: Clone + Zero>(f: &FSeries2, cone: &Cone, len: usize, conv: impl Fn(&BigInt) -> T) -> Vec<T> {
    let mut r = vec![T::zero(); cone.total() * len];
    for (n, v) in &f.coeffs {
        if cone.contains(n) {
            let base = cone.index(n) * len;
            for (slot, x) in r[base..base + len].iter_mut().zip(v) {
                *slot = conv(x);
            }
        }
    }
    r
}

fn first_nonzero<T: Zero>(cone: &Cone, r: &[T], len: usize) -> Option<Idx> {
    cone.cells().find(|n| {
        let base = cone.index(n) * len;
        r[base..base + len].iter().any(|x| !x.is_zero())
    })
}

/// Integer elimination for a unit leading coefficient.
fn eliminate(
    f: &FSeries2,
    gs: &[(Idx, BigInt)],
    g0: Idx,
    lead: &BigInt,
    cone: &Cone,
    len: usize,
) -> (Quotient, Option<Idx>) {
    let lim = cone.lim();
    let mut r = residual(f, cone, len, |x| x.clone());
    let mut quot = BTreeMap::new();
    let cells: Vec<Idx> = cone.cells().filter(|h| h.n1 + g0.n1 <= lim && h.n3 + g0.n3 <= lim).collect();
    for h in cells {
        let t = h.plus(&g0);
        let base = cone.index(&t) * len;
        if r[base..base + len].iter().all(Zero::is_zero) {
            continue;
        }
        // lead is +-1, so division is multiplication
        let q: Vec<BigInt> = r[base..base + len].iter().map(|x| x * lead).collect();
        for (gn, gc) in gs {
            if h.n1 + gn.n1 > lim {
                break;
            }
            if h.n3 + gn.n3 > lim {
                continue;
            }
            let u = h.plus(gn);
            let b = cone.index(&u) * len;
            for (slot, x) in r[b..b + len].iter_mut().zip(&q) {
                if !x.is_zero() {
                    *slot -= x * gc;
                }
            }
        }
        quot.insert(h, q);
    }
    let bad = first_nonzero(cone, &r, len);
    ((quot, Rational::one()), bad)
}

fn eliminate_rational(
    f: &FSeries2,
    gs: &[(Idx, Rational)],
    g0: Idx,
    lead: &Rational,
    cone: &Cone,
    len: usize,
) -> (Quotient, Option<Idx>) {
    let lim = cone.lim();
    let mut r = residual(f, cone, len, |x| Rational::from_integer(x.clone()));
    let mut quot: BTreeMap<Idx, Vec<Rational>> = BTreeMap::new();
    let cells: Vec<Idx> = cone.cells().filter(|h| h.n1 + g0.n1 <= lim && h.n3 + g0.n3 <= lim).collect();
    for h in cells {
        let t = h.plus(&g0);
        let base = cone.index(&t) * len;
        if r[base..base + len].iter().all(Zero::is_zero) {
            continue;
        }
        let q: Vec<Rational> = r[base..base + len].iter().map(|x| x / lead).collect();
        for (gn, gc) in gs {
            if h.n1 + gn.n1 > lim {
                break;
            }
            if h.n3 + gn.n3 > lim {
                continue;
            }
            let b = cone.index(&h.plus(gn)) * len;
            for (slot, x) in r[b..b + len].iter_mut().zip(&q) {
                *slot -= x * gc;
            }
        }
        quot.insert(h, q);
    }
    let bad = first_nonzero(cone, &r, len);
    let flat: Vec<Rational> = quot.values().flatten().cloned().collect();
    let (ints, scale) = crate::exact::integerize(&flat);
    let mut it = ints.into_iter();
    let coeffs = quot.keys().map(|n| (*n, it.by_ref().take(len).collect())).collect();
    ((coeffs, scale), bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SymVector;

    fn series(j: usize, prec: i64, order: i64, terms: &[((i64, i64, i64), &[i64])]) -> FSeries2 {
        FSeries2::from_rational_terms(j, prec, order, terms.iter().map(|&(n, v)| (n, SymVector::from_ints(v)))).unwrap()
    }

    #[test]
    fn round_trip_through_a_binomial_divisor() {
        let g = series(0, 6, 1, &[((1, 1, 1), &[1]), ((1, -1, 1), &[-1]), ((2, 0, 1), &[3])]);
        let x = series(1, 6, 0, &[((0, 0, 0), &[1, 2]), ((1, 0, 1), &[0, 5]), ((2, 1, 3), &[-7, 1])]);
        let fx = g.mul(&x);
        let h = fx.div_exact(&g).unwrap();
        assert_eq!(h.prec(), fx.prec() - 1);
        assert!(h.agrees_with(&x));
    }

    #[test]
    fn non_multiple_is_rejected() {
        let g = series(0, 4, 1, &[((1, 1, 1), &[1]), ((1, -1, 1), &[-1])]);
        let f = series(0, 4, 0, &[((2, 0, 2), &[1])]);
        assert!(matches!(f.div_exact(&g), Err(SeriesError::NonDivisible(_))));
    }

    #[test]
    fn non_unit_leading_coefficient() {
        let g = series(0, 5, 0, &[((0, 0, 0), &[2]), ((1, 0, 1), &[1])]);
        let x = series(0, 5, 0, &[((0, 0, 0), &[3]), ((1, 1, 1), &[1])]);
        let h = g.mul(&x).div_exact(&g).unwrap();
        assert!(h.agrees_with(&x));
    }
}
