//! Dense convolution over the semidefinite cone.

use super::{FSeries2, Idx, SeriesError};
use crate::exact::{binomial, factorial, Rational};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Cells `[n1, n2, n3]` with `0 <= n1, n3 <= lim` and `n2^2 <= 4 n1 n3`,
/// packed into one flat array.
pub(crate) struct Cone {
    lim: i64,
    start: Vec<usize>,
    width: Vec<i64>,
    total: usize,
}

impl Cone {
    pub(crate) fn new(lim: i64) -> Self {
        let side = (lim + 1) as usize;
        let mut start = Vec::with_capacity(side * side);
        let mut width = Vec::with_capacity(side * side);
        let mut total = 0usize;
        for n1 in 0..=lim {
            for n3 in 0..=lim {
                let w = (4 * n1 * n3).sqrt();
                start.push(total);
                width.push(w);
                total += (2 * w + 1) as usize;
            }
        }
        Cone { lim, start, width, total }
    }

    pub(crate) fn lim(&self) -> i64 {
        self.lim
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    pub(crate) fn contains(&self, n: &Idx) -> bool {
        n.n1 >= 0 && n.n3 >= 0 && n.n1 <= self.lim && n.n3 <= self.lim && {
            let c = (n.n1 * (self.lim + 1) + n.n3) as usize;
            n.n2.abs() <= self.width[c]
        }
    }

    /// Flat position of a cell; the cell must be inside the cone.
    #[inline]
    pub(crate) fn index(&self, n: &Idx) -> usize {
        let c = (n.n1 * (self.lim + 1) + n.n3) as usize;
        debug_assert!(n.n2.abs() <= self.width[c]);
        self.start[c] + (n.n2 + self.width[c]) as usize
    }

    /// All cells in the division order.
    pub(crate) fn cells(&self) -> impl Iterator<Item = Idx> + '_ {
        (0..=self.lim).flat_map(move |n1| {
            (0..=self.lim).flat_map(move |n3| {
                let w = self.width[(n1 * (self.lim + 1) + n3) as usize];
                (-w..=w).rev().map(move |n2| Idx::new(n1, n2, n3))
            })
        })
    }
}

/// One operand term: an index and one or more vectors ("variants"). The
/// convolution sums `variant_t(a) * variant_t(b)` over `t`.
type Term = (Idx, Vec<Vec<BigInt>>);

/// `sum_t sum_{a+b=n} A_t(a) B_t(b)` for every `n` in the cone of size
/// `lim`; vectors multiply as binary forms.
fn convolve(a: &[Term], b: &[Term], out_len: usize, lim: i64) -> BTreeMap<Idx, Vec<BigInt>> {
    if a.is_empty() || b.is_empty() {
        return BTreeMap::new();
    }
    let cone = Cone::new(lim);
    let bits = |t: &[Term]| t.iter().flat_map(|(_, vs)| vs.iter().flatten()).map(|x| x.bits()).max().unwrap_or(0);
    let nvar = a[0].1.len();
    let la = a[0].1[0].len();
    let lb = b[0].1[0].len();
    let count = (a.len().min(b.len()) * nvar * la.min(lb)) as u64;
    let log_count = 64 - count.leading_zeros() as u64;
    let mut b_sorted: Vec<&Term> = b.iter().collect();
    b_sorted.sort_by_key(|(n, _)| (n.n1, n.n3));
    if bits(a) + bits(b) + log_count + 1 <= 126 {
        convolve_i128(a, &b_sorted, out_len, &cone)
    } else {
        convolve_big(a, &b_sorted, out_len, &cone)
    }
}

fn convolve_i128(a: &[Term], b: &[&Term], out_len: usize, cone: &Cone) -> BTreeMap<Idx, Vec<BigInt>> {
    let lim = cone.lim;
    let flat = |vs: &Vec<Vec<BigInt>>| -> Vec<Vec<i128>> {
        vs.iter().map(|v| v.iter().map(|x| x.to_i128().expect("bit bound checked")).collect()).collect()
    };
    let bb: Vec<(Idx, Vec<Vec<i128>>)> = b.iter().map(|(n, vs)| (*n, flat(vs))).collect();
    let mut acc = vec![0i128; cone.total() * out_len];
    for (na, va) in a {
        let va = flat(va);
        for (nb, vb) in &bb {
            if na.n1 + nb.n1 > lim {
                break;
            }
            if na.n3 + nb.n3 > lim {
                continue;
            }
            let base = cone.index(&na.plus(nb)) * out_len;
            let out = &mut acc[base..base + out_len];
            for (xa, xb) in va.iter().zip(vb) {
                for (i, x) in xa.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    for (o, y) in out[i..].iter_mut().zip(xb) {
                        *o += x * y;
                    }
                }
            }
        }
    }
    let mut map = BTreeMap::new();
    for n in cone.cells() {
        let base = cone.index(&n) * out_len;
        let v = &acc[base..base + out_len];
        if v.iter().any(|x| *x != 0) {
            map.insert(n, v.iter().map(|&x| BigInt::from(x)).collect());
        }
    }
    map
}

fn convolve_big(a: &[Term], b: &[&Term], out_len: usize, cone: &Cone) -> BTreeMap<Idx, Vec<BigInt>> {
    let lim = cone.lim;
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); cone.total() * out_len];
    for (na, va) in a {
        for (nb, vb) in b {
            if na.n1 + nb.n1 > lim {
                break;
            }
            if na.n3 + nb.n3 > lim {
                continue;
            }
            let base = cone.index(&na.plus(nb)) * out_len;
            let out = &mut acc[base..base + out_len];
            for (xa, xb) in va.iter().zip(vb) {
                for (i, x) in xa.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (o, y) in out[i..].iter_mut().zip(xb) {
                        if !y.is_zero() {
                            *o += x * y;
                        }
                    }
                }
            }
        }
    }
    let mut map = BTreeMap::new();
    for n in cone.cells() {
        let base = cone.index(&n) * out_len;
        let v = &acc[base..base + out_len];
        if v.iter().any(|x| !x.is_zero()) {
            map.insert(n, v.to_vec());
        }
    }
    map
}

fn operand(s: &FSeries2, lim: i64, variants: impl Fn(&[BigInt]) -> Vec<Vec<BigInt>>) -> Vec<Term> {
    s.coeffs
        .iter()
        .filter(|(n, _)| n.n1 <= lim && n.n3 <= lim)
        .map(|(n, v)| (*n, variants(v)))
        .filter(|(_, vs)| vs.iter().any(|v| v.iter().any(|x| !x.is_zero())))
        .collect()
}

/// Common denominator, output precision and order of a product.
fn product_frame(a: &FSeries2, b: &FSeries2) -> (FSeries2, FSeries2, i64, i64) {
    let d = a.denom.lcm(&b.denom);
    let (a, b) = (a.with_denom(d), b.with_denom(d));
    let prec = (a.prec + b.order).min(b.prec + a.order);
    let order = a.order + b.order;
    (a, b, prec, order)
}

pub(super) fn mul(a: &FSeries2, b: &FSeries2) -> FSeries2 {
    let (a, b, prec, order) = product_frame(a, b);
    let lim = prec * a.denom;
    let ta = operand(&a, lim, |v| vec![v.to_vec()]);
    let tb = operand(&b, lim, |v| vec![v.to_vec()]);
    let coeffs = convolve(&ta, &tb, a.j + b.j + 1, lim);
    let mut s = FSeries2 { j: a.j + b.j, denom: a.denom, prec, order, scale: &a.scale * &b.scale, coeffs };
    s.normalize();
    s
}

pub(super) fn transvectant(f: &FSeries2, g: &FSeries2, k: usize) -> Result<FSeries2, SeriesError> {
    let (m, n) = (f.j, g.j);
    if k > m.min(n) {
        return Err(SeriesError::Shape(format!("transvectant index {k} exceeds degrees {m}, {n}")));
    }
    let (a, b, prec, order) = product_frame(f, g);
    let lim = prec * a.denom;
    let ta = operand(&a, lim, |v| {
        (0..=k)
            .map(|t| {
                let w = binomial(k as u64, t as u64) * if t % 2 == 0 { 1 } else { -1 };
                FSeries2::derivative_vectors(v, k - t, t).into_iter().map(|x| x * &w).collect()
            })
            .collect()
    });
    let tb = operand(&b, lim, |v| (0..=k).map(|t| FSeries2::derivative_vectors(v, t, k - t)).collect());
    let coeffs = convolve(&ta, &tb, m + n - 2 * k + 1, lim);
    let pref = Rational::new(
        factorial((m - k) as u64) * factorial((n - k) as u64),
        factorial(m as u64) * factorial(n as u64),
    );
    let mut s = FSeries2 {
        j: m + n - 2 * k,
        denom: a.denom,
        prec,
        order,
        scale: &a.scale * &b.scale * pref,
        coeffs,
    };
    s.normalize();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, SymVector};

    fn series(j: usize, prec: i64, order: i64, terms: &[((i64, i64, i64), &[i64])]) -> FSeries2 {
        FSeries2::from_rational_terms(j, prec, order, terms.iter().map(|&(n, v)| (n, SymVector::from_ints(v)))).unwrap()
    }

    #[test]
    fn cone_packing() {
        let c = Cone::new(3);
        let cells: Vec<_> = c.cells().collect();
        assert_eq!(cells.len(), c.total());
        for (i, n) in cells.iter().enumerate() {
            assert!(n.in_cone());
            assert!(c.contains(n));
            let _ = i;
        }
        let mut sorted = cells.clone();
        sorted.sort();
        assert_eq!(sorted, cells, "cells come out in the division order");
        assert!(!c.contains(&Idx::new(1, 3, 1)));
    }

    #[test]
    fn leading_slice_squares() {
        // (R - 1/R) Q1 Q2 squared
        let f = series(0, 4, 1, &[((1, 1, 1), &[1]), ((1, -1, 1), &[-1])]);
        let g = f.mul(&f);
        assert_eq!(g.prec(), 5);
        assert_eq!(g.order(), 2);
        assert_eq!(g.coeff(2, 2, 2), SymVector::from_ints(&[1]));
        assert_eq!(g.coeff(2, 0, 2), SymVector::from_ints(&[-2]));
        assert_eq!(g.coeff(2, -2, 2), SymVector::from_ints(&[1]));
    }

    #[test]
    fn vector_product_is_polynomial_product() {
        // (x1 + x2)(x1 - x2) = x1^2 - x2^2
        let a = series(1, 2, 0, &[((0, 0, 0), &[1, 1])]);
        let b = series(1, 2, 0, &[((0, 0, 0), &[1, -1])]);
        assert_eq!(a.mul(&b).coeff(0, 0, 0), SymVector::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn big_integer_path_matches() {
        let big = 1i64 << 62;
        let a = series(0, 3, 0, &[((0, 0, 0), &[big]), ((1, 0, 1), &[3])]);
        let sq = a.mul(&a);
        let expect = Rational::from_integer(BigInt::from(big) * BigInt::from(big));
        assert_eq!(sq.coeff(0, 0, 0).entries()[0], expect);
        assert_eq!(sq.coeff(1, 0, 1).entries()[0], int(6) * Rational::from_integer(BigInt::from(big)));
    }

    #[test]
    fn transvectant_of_constants_matches_polynomials() {
        // constant coefficient series: reduces to the polynomial transvectant
        let x1sq = series(2, 2, 0, &[((0, 0, 0), &[1, 0, 0])]);
        let x2sq = series(2, 2, 0, &[((0, 0, 0), &[0, 0, 1])]);
        let t = x1sq.transvectant(&x2sq, 2).unwrap();
        assert_eq!(t.coeff(0, 0, 0), SymVector::from_ints(&[1]));
        let s = series(6, 2, 0, &[((0, 0, 0), &[1, 0, 0, 0, 0, 0, 1])]);
        assert_eq!(s.transvectant(&s, 6).unwrap().coeff(0, 0, 0), SymVector::from_ints(&[2]));
        assert!(s.transvectant(&s, 3).unwrap().is_zero());
    }
}
