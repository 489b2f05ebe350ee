//! Truncated Fourier series of vector-valued Siegel modular forms of degree 2.
//!
//! A series is `sum_n a(n) e^{pi i Tr(n tau)}` over half-integral
//! semidefinite `n = [n1, n2, n3]`, each `a(n)` a `Sym^j` coordinate vector.
//! Indices are stored multiplied by a global denominator `D` so that theta
//! series with quarter-integral exponents stay integral.
//!
//! Coefficients are kept as a primitive integer vector map times one rational
//! scale. Every series carries a certified precision `prec` (all coefficients
//! with `n1 <= prec` and `n3 <= prec` are exact) and a structural order
//! `order` (the true series has `a(n) = 0` whenever `n1 < order` or
//! `n3 < order`).

mod conv;
mod div;
mod restrict;

pub use restrict::DiagonalRestriction;

use crate::exact::{content, format_rational, Rational, SymVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Nonzero remainder at the given (unscaled) index: the dividend is not a
    /// multiple of the divisor.
    #[error("not divisible: nonzero remainder at [{0}]")]
    NonDivisible(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by a series that vanishes to its precision")]
    ZeroDivisor,
}

/// A scaled index triple. The ordering is the monomial order used by exact
/// division: `n1` ascending, then `n3` ascending, then `n2` descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Idx {
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
}

impl Idx {
    pub const fn new(n1: i64, n2: i64, n3: i64) -> Self {
        Idx { n1, n2, n3 }
    }

    pub fn in_cone(&self) -> bool {
        self.n1 >= 0 && self.n3 >= 0 && self.n2 * self.n2 <= 4 * self.n1 * self.n3
    }

    fn plus(&self, o: &Idx) -> Idx {
        Idx::new(self.n1 + o.n1, self.n2 + o.n2, self.n3 + o.n3)
    }
}

impl Ord for Idx {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.n1, self.n3, -self.n2).cmp(&(o.n1, o.n3, -o.n2))
    }
}

impl PartialOrd for Idx {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug)]
pub struct FSeries2 {
    j: usize,
    denom: i64,
    prec: i64,
    order: i64,
    scale: Rational,
    coeffs: BTreeMap<Idx, Vec<BigInt>>,
}

impl FSeries2 {
    pub fn zero(j: usize, denom: i64, prec: i64) -> Self {
        assert!(denom >= 1);
        FSeries2 { j, denom, prec, order: 0, scale: Rational::one(), coeffs: BTreeMap::new() }
    }

    /// The constant 1 (scalar-valued).
    pub fn one(prec: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Idx::new(0, 0, 0), vec![BigInt::one()]);
        FSeries2 { j: 0, denom: 1, prec, order: 0, scale: Rational::one(), coeffs }
    }

    /// Builds a series from scaled integer terms; the result is normalized.
    /// Terms beyond the precision are dropped, terms outside the cone are an
    /// error.
    pub fn from_terms(
        j: usize,
        denom: i64,
        prec: i64,
        order: i64,
        scale: Rational,
        terms: impl IntoIterator<Item = (Idx, Vec<BigInt>)>,
    ) -> Result<Self, SeriesError> {
        let mut coeffs: BTreeMap<Idx, Vec<BigInt>> = BTreeMap::new();
        for (n, v) in terms {
            if v.len() != j + 1 {
                return Err(SeriesError::Shape(format!("vector of length {} for j = {j}", v.len())));
            }
            if !n.in_cone() {
                return Err(SeriesError::Shape(format!("index {n:?} outside the semidefinite cone")));
            }
            if n.n1 > prec * denom || n.n3 > prec * denom {
                continue;
            }
            match coeffs.get_mut(&n) {
                Some(cur) => cur.iter_mut().zip(v).for_each(|(a, b)| *a += b),
                None => {
                    coeffs.insert(n, v);
                }
            }
        }
        let mut s = FSeries2 { j, denom, prec, order, scale, coeffs };
        s.normalize();
        Ok(s)
    }

    /// Builds a series from rational vectors at unscaled integer indices.
    pub fn from_rational_terms(
        j: usize,
        prec: i64,
        order: i64,
        terms: impl IntoIterator<Item = ((i64, i64, i64), SymVector)>,
    ) -> Result<Self, SeriesError> {
        let terms: Vec<_> = terms.into_iter().collect();
        let flat: Vec<Rational> = terms.iter().flat_map(|(_, v)| v.entries().iter().cloned()).collect();
        let (ints, scale) = crate::exact::integerize(&flat);
        let mut it = ints.into_iter();
        let int_terms: Vec<_> = terms
            .iter()
            .map(|((a, b, c), v)| (Idx::new(*a, *b, *c), it.by_ref().take(v.entries().len()).collect()))
            .collect();
        Self::from_terms(j, 1, prec, order, scale, int_terms)
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Raises the structural order. Panics if a stored coefficient violates
    /// the claimed bound.
    pub fn with_order(mut self, order: i64) -> Self {
        let lim = order * self.denom;
        assert!(
            self.coeffs.keys().all(|n| n.n1 >= lim && n.n3 >= lim),
            "claimed order {order} contradicts stored coefficients"
        );
        self.order = order;
        self
    }

    /// Scaled indices with their primitive integer vectors.
    pub fn scaled_terms(&self) -> impl Iterator<Item = (&Idx, &Vec<BigInt>)> {
        self.coeffs.iter()
    }

    /// Unscaled coefficient `a([n1, n2, n3])`.
    pub fn coeff(&self, n1: i64, n2: i64, n3: i64) -> SymVector {
        let d = self.denom;
        match self.coeffs.get(&Idx::new(n1 * d, n2 * d, n3 * d)) {
            Some(v) => SymVector::new(v.iter().map(|x| Rational::from_integer(x.clone()) * &self.scale).collect()),
            None => SymVector::zero(self.j),
        }
    }

    /// Like [`coeff`](Self::coeff), but refuses indices outside the certified
    /// precision.
    pub fn coeff_checked(&self, n1: i64, n2: i64, n3: i64) -> Result<SymVector, SeriesError> {
        if n1 > self.prec || n3 > self.prec {
            return Err(SeriesError::Precision(format!(
                "a([{n1},{n2},{n3}]) needs precision {}, have {}",
                n1.max(n3),
                self.prec
            )));
        }
        Ok(self.coeff(n1, n2, n3))
    }

    /// All terms as unscaled rational indices and rational vectors.
    pub fn terms(&self) -> impl Iterator<Item = ([Rational; 3], SymVector)> + '_ {
        let d = BigInt::from(self.denom);
        self.coeffs.iter().map(move |(n, v)| {
            let idx = [n.n1, n.n2, n.n3].map(|x| Rational::new(BigInt::from(x), d.clone()));
            (idx, SymVector::new(v.iter().map(|x| Rational::from_integer(x.clone()) * &self.scale).collect()))
        })
    }

    /// Drops everything beyond `prec` (which must not exceed the current
    /// precision).
    pub fn truncate(&self, prec: i64) -> FSeries2 {
        assert!(prec <= self.prec, "cannot raise precision by truncation");
        let lim = prec * self.denom;
        let coeffs = self.coeffs.iter().filter(|(n, _)| n.n1 <= lim && n.n3 <= lim).map(|(n, v)| (*n, v.clone())).collect();
        let mut s = FSeries2 { coeffs, prec, ..self.clone() };
        s.normalize();
        s
    }

    /// Re-expresses the indices with denominator `d` (a multiple of the
    /// current one).
    pub fn with_denom(&self, d: i64) -> FSeries2 {
        assert!(d % self.denom == 0, "denominator {d} is not a multiple of {}", self.denom);
        if d == self.denom {
            return self.clone();
        }
        let f = d / self.denom;
        let coeffs = self.coeffs.iter().map(|(n, v)| (Idx::new(n.n1 * f, n.n2 * f, n.n3 * f), v.clone())).collect();
        FSeries2 { denom: d, coeffs, ..self.clone() }
    }

    /// Divides all indices by `denom / d`; fails if some index is not a
    /// multiple.
    pub fn reduce_denom(&self, d: i64) -> Result<FSeries2, SeriesError> {
        if self.denom % d != 0 {
            return Err(SeriesError::Shape(format!("{d} does not divide the denominator {}", self.denom)));
        }
        let f = self.denom / d;
        let mut coeffs = BTreeMap::new();
        for (n, v) in &self.coeffs {
            if n.n1 % f != 0 || n.n2 % f != 0 || n.n3 % f != 0 {
                return Err(SeriesError::Shape(format!("index {n:?} not divisible by {f}")));
            }
            coeffs.insert(Idx::new(n.n1 / f, n.n2 / f, n.n3 / f), v.clone());
        }
        Ok(FSeries2 { denom: d, coeffs, ..self.clone() })
    }

    pub fn scaled_by(&self, c: &Rational) -> FSeries2 {
        if c.is_zero() {
            return FSeries2 { coeffs: BTreeMap::new(), scale: Rational::one(), ..self.clone() };
        }
        let mut s = FSeries2 { scale: &self.scale * c, ..self.clone() };
        s.normalize();
        s
    }

    /// Scalar component `i` (coefficient of `x1^(j-i) x2^i`).
    pub fn component(&self, i: usize) -> FSeries2 {
        assert!(i <= self.j);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(_, v)| !v[i].is_zero())
            .map(|(n, v)| (*n, vec![v[i].clone()]))
            .collect();
        let mut s = FSeries2 { j: 0, coeffs, ..self.clone() };
        s.normalize();
        s
    }

    /// Builds a vector-valued series from scalar components.
    pub fn from_components(parts: &[FSeries2]) -> Result<FSeries2, SeriesError> {
        let first = parts.first().ok_or_else(|| SeriesError::Shape("no components".into()))?;
        if parts.iter().any(|p| p.j != 0) {
            return Err(SeriesError::Shape("components must be scalar".into()));
        }
        let d = parts.iter().fold(1, |acc, p| acc.lcm(&p.denom));
        let prec = parts.iter().map(|p| p.prec).min().unwrap();
        let order = parts.iter().map(|p| p.order).min().unwrap();
        let _ = first;
        let j = parts.len() - 1;
        let mut flat: BTreeMap<Idx, Vec<Rational>> = BTreeMap::new();
        for (i, p) in parts.iter().enumerate() {
            let p = p.with_denom(d);
            for (n, v) in &p.coeffs {
                let e = flat.entry(*n).or_insert_with(|| vec![Rational::zero(); j + 1]);
                e[i] = Rational::from_integer(v[0].clone()) * &p.scale;
            }
        }
        Self::from_rational_map(j, d, prec, order, flat)
    }

    fn from_rational_map(
        j: usize,
        denom: i64,
        prec: i64,
        order: i64,
        map: BTreeMap<Idx, Vec<Rational>>,
    ) -> Result<FSeries2, SeriesError> {
        let flat: Vec<Rational> = map.values().flatten().cloned().collect();
        let (ints, scale) = crate::exact::integerize(&flat);
        let mut it = ints.into_iter();
        let terms: Vec<_> = map.keys().map(|n| (*n, it.by_ref().take(j + 1).collect())).collect();
        Self::from_terms(j, denom, prec, order, scale, terms)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &FSeries2, c: &Rational) -> Result<FSeries2, SeriesError> {
        if self.j != other.j {
            return Err(SeriesError::Shape(format!("adding j = {} and j = {}", self.j, other.j)));
        }
        let d = self.denom.lcm(&other.denom);
        let (a, b) = (self.with_denom(d), other.with_denom(d));
        let prec = a.prec.min(b.prec);
        let order = a.order.min(b.order);
        let lim = prec * d;
        // common scale: sa = na/da, sb*c = nb/db
        let sb = &b.scale * c;
        let (na, da) = (a.scale.numer().clone(), a.scale.denom().clone());
        let (nb, db) = (sb.numer().clone(), sb.denom().clone());
        let fa = &na * &db;
        let fb = &nb * &da;
        let mut coeffs: BTreeMap<Idx, Vec<BigInt>> = BTreeMap::new();
        for (n, v) in a.coeffs.iter().filter(|(n, _)| n.n1 <= lim && n.n3 <= lim) {
            coeffs.insert(*n, v.iter().map(|x| x * &fa).collect());
        }
        if !fb.is_zero() {
            for (n, v) in b.coeffs.iter().filter(|(n, _)| n.n1 <= lim && n.n3 <= lim) {
                let e = coeffs.entry(*n).or_insert_with(|| vec![BigInt::zero(); a.j + 1]);
                e.iter_mut().zip(v).for_each(|(x, y)| *x += y * &fb);
            }
        }
        let mut s = FSeries2 { j: a.j, denom: d, prec, order, scale: Rational::new(BigInt::one(), &da * &db), coeffs };
        s.normalize();
        Ok(s)
    }

    pub fn add(&self, other: &FSeries2) -> Result<FSeries2, SeriesError> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &FSeries2) -> Result<FSeries2, SeriesError> {
        self.add_scaled(other, &-Rational::one())
    }

    /// Product; vectors multiply through `Sym^a x Sym^b -> Sym^(a+b)` in the
    /// monomial basis.
    pub fn mul(&self, other: &FSeries2) -> FSeries2 {
        conv::mul(self, other)
    }

    pub fn pow(&self, e: u32) -> FSeries2 {
        let mut acc = FSeries2::one(self.prec).with_denom(self.denom);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Transvectant `(F, G)_k` with both series read as binary forms in
    /// `x1, x2` with series coefficients.
    pub fn transvectant(&self, other: &FSeries2, k: usize) -> Result<FSeries2, SeriesError> {
        conv::transvectant(self, other, k)
    }

    /// Exact quotient by a scalar series; see [`div::div_exact`].
    pub fn div_exact(&self, g: &FSeries2) -> Result<FSeries2, SeriesError> {
        div::div_exact(self, g)
    }

    pub fn restrict_diagonal(&self) -> DiagonalRestriction {
        restrict::restrict_diagonal(self)
    }

    /// The `n3 = m` slice, keyed by unscaled `(n1, n2)`.
    pub fn fourier_jacobi(&self, m: i64) -> BTreeMap<(i64, i64), SymVector> {
        restrict::fourier_jacobi(self, m)
    }

    /// Checks the symmetries forced by `diag(a, a)`, `a = (0 1; 1 0)`, and by
    /// `diag(u, u)`, `u = diag(1, -1)`, on a form of weight `(j, k)`:
    ///
    /// * `a([n3, n2, n1])[j - i] = (-1)^k e a(n)[i]`,
    /// * `a([n1, -n2, n3])[i] = (-1)^(i + k) a(n)[i]`,
    ///
    /// where `e = -1` for forms with the character and `+1` otherwise.
    pub fn check_iota_symmetry(&self, k: i64, has_character: bool) -> bool {
        restrict::check_iota_symmetry(self, k, has_character)
    }

    /// Equality of all coefficients up to the smaller of the two precisions.
    pub fn agrees_with(&self, other: &FSeries2) -> bool {
        if self.j != other.j {
            return false;
        }
        let p = self.prec.min(other.prec);
        let d = self.denom.lcm(&other.denom);
        let a = self.truncate(p).with_denom(d);
        let b = other.truncate(p).with_denom(d);
        a.coeffs == b.coeffs && (a.coeffs.is_empty() || a.scale == b.scale)
    }

    /// `c` with `other = c * self` to the common precision, if it exists.
    pub fn ratio_to(&self, other: &FSeries2) -> Option<Rational> {
        if self.j != other.j {
            return None;
        }
        let p = self.prec.min(other.prec);
        let d = self.denom.lcm(&other.denom);
        let a = self.truncate(p).with_denom(d);
        let b = other.truncate(p).with_denom(d);
        if a.coeffs.is_empty() {
            return None;
        }
        if a.coeffs != b.coeffs {
            return None;
        }
        Some(&b.scale / &a.scale)
    }

    /// Partial derivative of the `Sym^j` polynomial in `x1^a x2^b`.
    fn derivative_vectors(v: &[BigInt], a: usize, b: usize) -> Vec<BigInt> {
        let m = v.len() - 1;
        let mut out = vec![BigInt::zero(); m + 1 - a - b];
        for (i, c) in v.iter().enumerate() {
            let (e1, e2) = (m - i, i);
            if e1 < a || e2 < b || c.is_zero() {
                continue;
            }
            let f = crate::exact::falling(e1 as u64, a as u64) * crate::exact::falling(e2 as u64, b as u64);
            out[i - b] += c * f;
        }
        out
    }

    /// Makes the integer data primitive with a canonical sign.
    fn normalize(&mut self) {
        self.coeffs.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        if self.coeffs.is_empty() {
            self.scale = Rational::one();
            return;
        }
        let mut g = BigInt::zero();
        for v in self.coeffs.values() {
            g = g.gcd(&content(v));
            if g.is_one() {
                break;
            }
        }
        let first_neg = self.coeffs.values().next().unwrap().iter().find(|x| !x.is_zero()).unwrap().is_negative();
        if first_neg {
            g = -g;
        }
        if !g.is_one() {
            for v in self.coeffs.values_mut() {
                for x in v.iter_mut() {
                    *x = &*x / &g;
                }
            }
            self.scale = &self.scale * Rational::from_integer(g);
        }
    }

    /// JSON export: `{"j", "denom", "prec", "coeffs": {"n1,n2,n3": [..]}}`.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (n, v) in self.terms() {
            let key = n.iter().map(format_rational).collect::<Vec<_>>().join(",");
            coeffs.insert(key, Value::from(v.to_strings()));
        }
        json!({
            "j": self.j,
            "denom": self.denom,
            "prec": self.prec,
            "coeffs": coeffs,
        })
    }
}

impl PartialEq for FSeries2 {
    fn eq(&self, other: &Self) -> bool {
        self.j == other.j
            && self.denom == other.denom
            && self.prec == other.prec
            && self.coeffs == other.coeffs
            && (self.coeffs.is_empty() || self.scale == other.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn scalar(prec: i64, terms: &[((i64, i64, i64), i64)]) -> FSeries2 {
        FSeries2::from_rational_terms(
            0,
            prec,
            0,
            terms.iter().map(|&(n, c)| (n, SymVector::from_ints(&[c]))),
        )
        .unwrap()
    }

    #[test]
    fn division_order() {
        let mut v = vec![Idx::new(1, -1, 1), Idx::new(1, 1, 1), Idx::new(0, 0, 0), Idx::new(1, 0, 2)];
        v.sort();
        assert_eq!(v, vec![Idx::new(0, 0, 0), Idx::new(1, 1, 1), Idx::new(1, -1, 1), Idx::new(1, 0, 2)]);
    }

    #[test]
    fn normalization_is_canonical() {
        let a = scalar(3, &[((1, 1, 1), -4), ((1, -1, 1), 6)]);
        assert_eq!(a.scale(), &int(-2));
        assert_eq!(a.coeff(1, 1, 1).entries()[0], int(-4));
        let b = a.scaled_by(&int(3));
        assert_eq!(b.coeff(1, -1, 1).entries()[0], int(18));
        assert_eq!(a.ratio_to(&b), Some(int(3)));
    }

    #[test]
    fn addition_and_cancellation() {
        let a = scalar(3, &[((1, 1, 1), 1), ((2, 0, 2), 5)]);
        let b = scalar(2, &[((1, 1, 1), 1)]);
        let c = a.sub(&b).unwrap();
        assert_eq!(c.prec(), 2);
        assert_eq!(c.len(), 1);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn rejects_indices_outside_the_cone() {
        let r = FSeries2::from_terms(0, 1, 3, 0, int(1), [(Idx::new(1, 3, 1), vec![BigInt::one()])]);
        assert!(matches!(r, Err(SeriesError::Shape(_))));
    }

    #[test]
    fn components_round_trip() {
        let v = FSeries2::from_rational_terms(
            2,
            3,
            1,
            [((1, 1, 1), SymVector::from_ints(&[1, 2, 3])), ((1, 0, 2), SymVector::from_ints(&[0, 4, -1]))],
        )
        .unwrap();
        let parts: Vec<_> = (0..=2).map(|i| v.component(i)).collect();
        assert_eq!(FSeries2::from_components(&parts).unwrap().coeff(1, 0, 2), v.coeff(1, 0, 2));
        assert_eq!(FSeries2::from_components(&parts).unwrap().coeff(1, 1, 1), v.coeff(1, 1, 1));
    }

    #[test]
    fn json_shape() {
        let a = scalar(2, &[((1, 1, 1), 3)]);
        let js = a.to_json();
        assert_eq!(js["coeffs"]["1,1,1"], json!(["3"]));
        assert_eq!(js["prec"], json!(2));
    }
}
