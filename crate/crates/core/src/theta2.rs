//! Genus-2 theta constants and odd theta gradients, and the base forms built
//! from them.

use crate::exact::Rational;
use crate::fseries2::{FSeries2, Idx, SeriesError};
use crate::siegel::SiegelForm;
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Theta series are summed with indices scaled by 4.
const D: i64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("characteristic {0} has the wrong parity for this operation")]
    Parity(ThetaChar),
    #[error("precision {0} is too small (need at least 1)")]
    Precision(i64),
    #[error("unknown base form {0:?}")]
    UnknownForm(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A characteristic `[m'; m'']` with entries in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaChar {
    pub m1: [u8; 2],
    pub m2: [u8; 2],
}

impl ThetaChar {
    pub fn new(m1: [u8; 2], m2: [u8; 2]) -> Self {
        assert!(m1.iter().chain(&m2).all(|&x| x <= 1), "characteristic entries must be 0 or 1");
        ThetaChar { m1, m2 }
    }

    pub fn is_even(&self) -> bool {
        (self.m1[0] * self.m2[0] + self.m1[1] * self.m2[1]) % 2 == 0
    }

    pub fn all() -> Vec<ThetaChar> {
        (0u8..16).map(|b| ThetaChar::new([b >> 3 & 1, b >> 2 & 1], [b >> 1 & 1, b & 1])).collect()
    }

    pub fn even() -> Vec<ThetaChar> {
        Self::all().into_iter().filter(ThetaChar::is_even).collect()
    }

    pub fn odd() -> Vec<ThetaChar> {
        Self::all().into_iter().filter(|c| !c.is_even()).collect()
    }
}

impl fmt::Display for ThetaChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{};{}{}]", self.m1[0], self.m1[1], self.m2[0], self.m2[1])
    }
}

/// Lattice sum over `x` in `[-b, b]^2`, with `v = 2x + m'`. A term
/// contributes at scaled index `(v1^2, 2 v1 v2, v2^2)` with sign
/// `(-1)^(x . m'')`; the constant `i^(m' . m'')` is dropped. With `gradient`
/// the term carries the vector `(v1, v2)` (the z-gradient up to `pi i`).
fn lattice_sum(m: &ThetaChar, prec: i64, b: i64, gradient: bool) -> BTreeMap<Idx, Vec<BigInt>> {
    let lim = prec * D;
    let mut out: BTreeMap<Idx, Vec<BigInt>> = BTreeMap::new();
    let len = if gradient { 2 } else { 1 };
    for x1 in -b..=b {
        let v1 = 2 * x1 + m.m1[0] as i64;
        if v1 * v1 > lim {
            continue;
        }
        for x2 in -b..=b {
            let v2 = 2 * x2 + m.m1[1] as i64;
            if v2 * v2 > lim {
                continue;
            }
            let neg = (x1 * m.m2[0] as i64 + x2 * m.m2[1] as i64).rem_euclid(2) == 1;
            let sign = if neg { -1 } else { 1 };
            let n = Idx::new(v1 * v1, 2 * v1 * v2, v2 * v2);
            let e = out.entry(n).or_insert_with(|| vec![BigInt::zero(); len]);
            if gradient {
                e[0] += sign * v1;
                e[1] += sign * v2;
            } else {
                e[0] += sign;
            }
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

/// Certified lattice sum: the box is `[-B, B]^2` with `B = ceil(sqrt P) + 2`,
/// and enlarging it by one must not change any retained coefficient.
fn certified_sum(m: &ThetaChar, prec: i64, gradient: bool) -> Result<FSeries2, ThetaError> {
    if prec < 1 {
        return Err(ThetaError::Precision(prec));
    }
    let b = (prec.sqrt() + 1) + 2;
    let terms = lattice_sum(m, prec, b, gradient);
    debug_assert_eq!(terms, lattice_sum(m, prec, b + 1, gradient), "lattice box too small");
    let j = if gradient { 1 } else { 0 };
    Ok(FSeries2::from_terms(j, D, prec, 0, Rational::one(), terms)?)
}

/// Theta constant with an even characteristic, `D = 4`, scalar-valued.
pub fn theta_constant(m: &ThetaChar, prec: i64) -> Result<FSeries2, ThetaError> {
    if !m.is_even() {
        return Err(ThetaError::Parity(*m));
    }
    certified_sum(m, prec, false)
}

/// z-gradient at `z = 0` of the theta series with an odd characteristic,
/// `D = 4`, `j = 1`, with the constant `2 pi i` dropped.
pub fn theta_gradient(m: &ThetaChar, prec: i64) -> Result<FSeries2, ThetaError> {
    if m.is_even() {
        return Err(ThetaError::Parity(*m));
    }
    certified_sum(m, prec, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseForm {
    Chi5,
    Chi6_3,
    Chi10,
    Psi4,
}

impl BaseForm {
    pub const ALL: [BaseForm; 4] = [BaseForm::Chi5, BaseForm::Chi6_3, BaseForm::Chi10, BaseForm::Psi4];

    pub fn name(self) -> &'static str {
        match self {
            BaseForm::Chi5 => "chi5",
            BaseForm::Chi6_3 => "chi6_3",
            BaseForm::Chi10 => "chi10",
            BaseForm::Psi4 => "psi4",
        }
    }

    pub fn parse(s: &str) -> Result<BaseForm, ThetaError> {
        Self::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| ThetaError::UnknownForm(s.to_string()))
    }
}

/// Product of the ten even theta constants, normalized to `a([1,1,1]) = 1`.
pub fn chi5_series(prec: i64) -> Result<FSeries2, ThetaError> {
    let mut acc = FSeries2::one(prec).with_denom(D);
    for m in ThetaChar::even() {
        acc = acc.mul(&theta_constant(&m, prec)?);
    }
    let s = acc.reduce_denom(1)?.with_order(1);
    let lead = s.coeff(1, 1, 1).entries()[0].clone();
    if lead.is_zero() {
        return Err(ThetaError::Precision(prec));
    }
    Ok(s.scaled_by(&(Rational::one() / lead)))
}

/// Symmetrized product of the six odd gradients in `Sym^6`, primitive
/// integral with a positive leading entry.
pub fn chi6_3_series(prec: i64) -> Result<FSeries2, ThetaError> {
    let mut acc = FSeries2::one(prec).with_denom(D);
    for m in ThetaChar::odd() {
        acc = acc.mul(&theta_gradient(&m, prec)?);
    }
    let s = acc.reduce_denom(1)?.with_order(1);
    if s.is_zero() {
        return Err(ThetaError::Precision(prec));
    }
    // normalize() already makes the integer data primitive with a positive
    // first entry; drop the scale
    Ok(s.scaled_by(&(Rational::one() / s.scale())))
}

/// `psi4 = (1/4) sum theta_m^8` over the even characteristics, the
/// Eisenstein series with constant term 1.
pub fn psi4_series(prec: i64) -> Result<FSeries2, ThetaError> {
    let mut acc = FSeries2::zero(0, 1, prec);
    for m in ThetaChar::even() {
        let t = theta_constant(&m, prec)?;
        let t2 = t.mul(&t);
        let t4 = t2.mul(&t2);
        acc = acc.add(&t4.mul(&t4).reduce_denom(1)?)?;
    }
    Ok(acc.scaled_by(&Rational::new(1.into(), 4.into())))
}

pub fn base_form(which: BaseForm, prec: i64) -> Result<SiegelForm, ThetaError> {
    if prec < 2 {
        return Err(ThetaError::Precision(prec));
    }
    let form = match which {
        BaseForm::Chi5 => SiegelForm::new(0, 5, true, chi5_series(prec)?, "product of the ten even theta constants"),
        BaseForm::Chi6_3 => {
            SiegelForm::new(6, 3, true, chi6_3_series(prec)?, "symmetrized product of the six odd theta gradients")
        }
        BaseForm::Chi10 => {
            let c = chi5_series(prec)?;
            SiegelForm::new(0, 10, false, c.mul(&c), "square of chi5")
        }
        BaseForm::Psi4 => SiegelForm::new(0, 4, false, psi4_series(prec)?, "1/4 sum of eighth powers of even theta constants"),
    };
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, SymVector};

    #[test]
    fn characteristic_counts() {
        assert_eq!(ThetaChar::all().len(), 16);
        assert_eq!(ThetaChar::even().len(), 10);
        assert_eq!(ThetaChar::odd().len(), 6);
    }

    #[test]
    fn parity_is_enforced() {
        for m in ThetaChar::odd() {
            assert!(matches!(theta_constant(&m, 2), Err(ThetaError::Parity(_))));
        }
        for m in ThetaChar::even() {
            assert!(matches!(theta_gradient(&m, 2), Err(ThetaError::Parity(_))));
        }
    }

    #[test]
    fn constant_terms() {
        let t = theta_constant(&ThetaChar::new([0, 0], [0, 0]), 2).unwrap();
        assert_eq!(t.coeff(0, 0, 0), SymVector::from_ints(&[1]));
        for m in ThetaChar::odd() {
            assert!(theta_gradient(&m, 3).unwrap().coeff(0, 0, 0).is_zero());
        }
    }

    #[test]
    fn box_is_large_enough() {
        for m in ThetaChar::even() {
            for p in 1..6 {
                let b = (p as i64).sqrt() + 3;
                assert_eq!(lattice_sum(&m, p, b, false), lattice_sum(&m, p, b + 4, false));
            }
        }
    }

    #[test]
    fn chi5_leading_slice() {
        let c = chi5_series(3).unwrap();
        assert_eq!(c.coeff(1, 1, 1), SymVector::from_ints(&[1]));
        assert_eq!(c.coeff(1, -1, 1), SymVector::from_ints(&[-1]));
        assert_eq!(c.coeff(1, 0, 1), SymVector::from_ints(&[0]));
    }

    #[test]
    fn chi6_3_leading_vector() {
        let c = chi6_3_series(3).unwrap();
        assert_eq!(c.coeff(1, 1, 1), SymVector::from_ints(&[0, 0, 1, 2, 1, 0, 0]));
        assert_eq!(c.coeff(1, -1, 1), SymVector::from_ints(&[0, 0, -1, 2, -1, 0, 0]));
    }

    #[test]
    fn psi4_constant_term() {
        let p = psi4_series(2).unwrap();
        assert_eq!(p.coeff(0, 0, 0).entries()[0], int(1));
        assert_eq!(p.coeff(2, 0, 0).entries()[0], int(240));
        assert_eq!(p.coeff(2, 2, 2).entries()[0], int(13440));
        assert_eq!(p.coeff(2, 0, 2).entries()[0], int(30240));
    }
}
