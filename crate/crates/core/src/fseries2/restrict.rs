use super::{FSeries2, Idx};
use crate::exact::{format_rational, Rational, SymVector};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Pullback to `tau12 = 0`: cell `(n1, n3)` holds `sum_{n2} a([n1, n2, n3])`,
/// the coefficient of `e^{pi i n1 tau1} e^{pi i n3 tau2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalRestriction {
    pub j: usize,
    /// Index denominator, as in the source series.
    pub denom: i64,
    /// Every cell with `n1, n3 <= prec` is complete.
    pub prec: i64,
    /// Scaled `(n1, n3)` to the summed vector; zero cells are omitted.
    pub table: BTreeMap<(i64, i64), SymVector>,
}

impl DiagonalRestriction {
    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Unscaled lookup; zero for absent cells.
    pub fn get(&self, n1: i64, n3: i64) -> SymVector {
        self.table.get(&(n1 * self.denom, n3 * self.denom)).cloned().unwrap_or_else(|| SymVector::zero(self.j))
    }

    /// Component `l` as a map `(n1, n3) -> coefficient` (scaled keys).
    pub fn component(&self, l: usize) -> BTreeMap<(i64, i64), Rational> {
        self.table
            .iter()
            .filter(|(_, v)| !v.entries()[l].is_zero())
            .map(|(k, v)| (*k, v.entries()[l].clone()))
            .collect()
    }

    /// Cells keyed `"n1,n3"` (unscaled), with the same conventions as
    /// [`FSeries2::to_json`].
    pub fn to_json(&self) -> Value {
        let d = BigInt::from(self.denom);
        let mut cells = Map::new();
        for ((a, b), v) in &self.table {
            let key = [a, b].map(|x| format_rational(&Rational::new(BigInt::from(*x), d.clone()))).join(",");
            cells.insert(key, Value::from(v.to_strings()));
        }
        json!({"j": self.j, "denom": self.denom, "prec": self.prec, "cells": cells})
    }

    /// Product of two restrictions as two-variable power series.
    pub fn mul(&self, other: &DiagonalRestriction) -> DiagonalRestriction {
        assert_eq!(self.denom, other.denom, "restrictions with different denominators");
        let prec = self.prec.min(other.prec);
        let lim = prec * self.denom;
        let j = self.j + other.j;
        let mut table: BTreeMap<(i64, i64), Vec<Rational>> = BTreeMap::new();
        for ((a1, a3), va) in &self.table {
            for ((b1, b3), vb) in &other.table {
                let (n1, n3) = (a1 + b1, a3 + b3);
                if n1 > lim || n3 > lim {
                    continue;
                }
                let e = table.entry((n1, n3)).or_insert_with(|| vec![Rational::zero(); j + 1]);
                for (i, x) in va.entries().iter().enumerate() {
                    for (k, y) in vb.entries().iter().enumerate() {
                        e[i + k] += x * y;
                    }
                }
            }
        }
        let table = table
            .into_iter()
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
            .map(|(k, v)| (k, SymVector::new(v)))
            .collect();
        DiagonalRestriction { j, denom: self.denom, prec, table }
    }
}

pub(super) fn restrict_diagonal(f: &FSeries2) -> DiagonalRestriction {
    let lim = f.prec * f.denom;
    let mut sums: BTreeMap<(i64, i64), Vec<BigInt>> = BTreeMap::new();
    for (n, v) in &f.coeffs {
        // stored terms never exceed the precision, so every cell is complete
        debug_assert!(n.n1 <= lim && n.n3 <= lim);
        let e = sums.entry((n.n1, n.n3)).or_insert_with(|| vec![BigInt::zero(); f.j + 1]);
        e.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    let table = sums
        .into_iter()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(k, v)| (k, SymVector::new(v.into_iter().map(|x| Rational::from_integer(x) * &f.scale).collect())))
        .collect();
    DiagonalRestriction { j: f.j, denom: f.denom, prec: f.prec, table }
}

pub(super) fn fourier_jacobi(f: &FSeries2, m: i64) -> BTreeMap<(i64, i64), SymVector> {
    let d = f.denom;
    f.coeffs
        .iter()
        .filter(|(n, _)| n.n3 == m * d && n.n1 % d == 0 && n.n2 % d == 0)
        .map(|(n, v)| {
            let w = SymVector::new(v.iter().map(|x| Rational::from_integer(x.clone()) * &f.scale).collect());
            ((n.n1 / d, n.n2 / d), w)
        })
        .collect()
}

pub(super) fn check_iota_symmetry(f: &FSeries2, k: i64, has_character: bool) -> bool {
    let j = f.j;
    let swap_sign: i64 = if k % 2 == 0 { 1 } else { -1 } * if has_character { -1 } else { 1 };
    let zero = vec![BigInt::zero(); j + 1];
    for (n, v) in &f.coeffs {
        // the partner of a term inside the precision box is inside it too
        let swapped = f.coeffs.get(&Idx::new(n.n3, n.n2, n.n1)).unwrap_or(&zero);
        for i in 0..=j {
            if swapped[j - i] != &v[i] * swap_sign {
                return false;
            }
        }
        let flipped = f.coeffs.get(&Idx::new(n.n1, -n.n2, n.n3)).unwrap_or(&zero);
        for i in 0..=j {
            let s = if (i as i64 + k) % 2 == 0 { 1 } else { -1 };
            if flipped[i] != &v[i] * s {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leading() -> FSeries2 {
        FSeries2::from_rational_terms(
            0,
            3,
            1,
            [((1, 1, 1), SymVector::from_ints(&[1])), ((1, -1, 1), SymVector::from_ints(&[-1]))],
        )
        .unwrap()
    }

    #[test]
    fn odd_slice_restricts_to_zero() {
        let f = leading();
        assert!(f.restrict_diagonal().is_zero());
        let sq = f.mul(&f);
        assert_eq!(sq.restrict_diagonal().get(2, 2), SymVector::from_ints(&[0]));
    }

    #[test]
    fn jacobi_slices_partition_the_support() {
        let f = leading().mul(&leading());
        let total: usize = (0..=f.prec()).map(|m| f.fourier_jacobi(m).len()).sum();
        assert_eq!(total, f.len());
        assert!(f.fourier_jacobi(0).is_empty());
    }

    #[test]
    fn symmetry_of_the_leading_slice() {
        // weight 5 with character
        assert!(leading().check_iota_symmetry(5, true));
        assert!(!leading().check_iota_symmetry(4, true));
    }
}
