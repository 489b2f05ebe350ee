//! Elliptic modular forms of level 1, 2 and 4 as exact q-expansions.

mod newforms;
mod spaces;

pub use newforms::{describe, newforms, Eigendata, NewformData};
pub use spaces::{cusp_basis, eta12_basis, level1_basis, CuspSpace};

use crate::exact::{format_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QFormError {
    #[error("unknown q-expansion {0:?}")]
    UnknownName(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("dimension mismatch for weight {k}, level {level}: expected {expected}, basis has {got}")]
    Dimension { k: u32, level: u32, expected: usize, got: usize },
    #[error("series is not in the span of the basis")]
    NotInSpace,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// One-variable power series with exponents in `(1/D) Z`. Coefficients of
/// `q^e` with `e < prec` are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries1 {
    denom: i64,
    prec: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl QSeries1 {
    /// Series from scaled exponents (`q^(s/denom)`); terms at or beyond the
    /// precision are dropped.
    pub fn new(denom: i64, prec: i64, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        assert!(denom >= 1);
        let mut coeffs = BTreeMap::new();
        for (s, c) in terms {
            assert!(s >= 0, "negative exponent");
            if s < prec * denom && !c.is_zero() {
                *coeffs.entry(s).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        QSeries1 { denom, prec, coeffs }
    }

    /// Integral exponents: `xs[n]` is the coefficient of `q^n`; the precision
    /// is `xs.len()`.
    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(1, xs.len() as i64, xs.iter().enumerate().map(|(n, &c)| (n as i64, Rational::from_integer(c.into()))))
    }

    pub fn from_rationals(xs: &[Rational]) -> Self {
        Self::new(1, xs.len() as i64, xs.iter().cloned().enumerate().map(|(n, c)| (n as i64, c)))
    }

    pub fn zero(prec: i64) -> Self {
        Self::new(1, prec, [])
    }

    pub fn one(prec: i64) -> Self {
        Self::new(1, prec, [(0, Rational::one())])
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n` for integral `n`.
    pub fn coeff(&self, n: i64) -> Rational {
        self.coeff_scaled(n * self.denom)
    }

    /// Coefficient of `q^(s/denom)`.
    pub fn coeff_scaled(&self, s: i64) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact coefficient, refusing exponents beyond the precision.
    pub fn coeff_checked(&self, n: i64) -> Result<Rational, QFormError> {
        if n >= self.prec {
            return Err(QFormError::Precision(format!("a({n}) needs precision {}, have {}", n + 1, self.prec)));
        }
        Ok(self.coeff(n))
    }

    /// Scaled exponents with coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    /// Lowest exponent with its coefficient.
    pub fn leading(&self) -> Option<(Rational, Rational)> {
        self.coeffs
            .iter()
            .next()
            .map(|(s, c)| (Rational::new(BigInt::from(*s), BigInt::from(self.denom)), c.clone()))
    }

    /// Coefficients of `q^0 .. q^(n-1)` (integral exponents only).
    pub fn to_vec(&self, n: usize) -> Vec<Rational> {
        assert_eq!(self.denom, 1, "to_vec needs integral exponents");
        (0..n as i64).map(|i| self.coeff(i)).collect()
    }

    pub fn truncate(&self, prec: i64) -> QSeries1 {
        assert!(prec <= self.prec, "cannot raise precision by truncation");
        Self::new(self.denom, prec, self.coeffs.iter().map(|(s, c)| (*s, c.clone())))
    }

    pub fn with_denom(&self, d: i64) -> QSeries1 {
        assert!(d % self.denom == 0);
        let f = d / self.denom;
        QSeries1 { denom: d, prec: self.prec, coeffs: self.coeffs.iter().map(|(s, c)| (s * f, c.clone())).collect() }
    }

    /// Smallest denominator that still represents every exponent.
    pub fn reduced(&self) -> QSeries1 {
        let g = self.coeffs.keys().fold(self.denom, |g, s| g.gcd(s));
        QSeries1 { denom: self.denom / g, prec: self.prec, coeffs: self.coeffs.iter().map(|(s, c)| (s / g, c.clone())).collect() }
    }

    fn common(&self, o: &QSeries1) -> (QSeries1, QSeries1) {
        let d = self.denom.lcm(&o.denom);
        (self.with_denom(d), o.with_denom(d))
    }

    pub fn add(&self, o: &QSeries1) -> QSeries1 {
        let (a, b) = self.common(o);
        let prec = a.prec.min(b.prec);
        Self::new(a.denom, prec, a.coeffs.into_iter().chain(b.coeffs))
    }

    pub fn sub(&self, o: &QSeries1) -> QSeries1 {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QSeries1 {
        Self::new(self.denom, self.prec, self.coeffs.iter().map(|(s, x)| (*s, x * c)))
    }

    /// Product; the precision accounts for the leading exponents.
    pub fn mul(&self, o: &QSeries1) -> QSeries1 {
        let (a, b) = self.common(o);
        let d = a.denom;
        let va = a.coeffs.keys().next().copied();
        let vb = b.coeffs.keys().next().copied();
        let (va, vb) = match (va, vb) {
            (Some(x), Some(y)) => (x, y),
            _ => return QSeries1::new(d, a.prec.min(b.prec), []),
        };
        // prec in scaled units, rounded down to whole exponents
        let lim = (a.prec * d + vb).min(b.prec * d + va);
        let prec = lim / d;
        let lim = prec * d;
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (s, x) in &a.coeffs {
            if s + vb >= lim {
                break;
            }
            for (t, y) in &b.coeffs {
                if s + t >= lim {
                    break;
                }
                *out.entry(s + t).or_insert_with(Rational::zero) += x * y;
            }
        }
        Self::new(d, prec, out)
    }

    pub fn pow(&self, e: u32) -> QSeries1 {
        let mut out = QSeries1::one(self.prec).with_denom(self.denom);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `f(m tau)`.
    pub fn rescale(&self, m: i64) -> QSeries1 {
        assert!(m >= 1);
        QSeries1 { denom: self.denom, prec: self.prec * m, coeffs: self.coeffs.iter().map(|(s, c)| (s * m, c.clone())).collect() }
    }

    /// JSON map `{"n" or "n/D": "num/den"}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        let d = BigInt::from(self.denom);
        for (s, c) in &self.coeffs {
            m.insert(format_rational(&Rational::new(BigInt::from(*s), d.clone())), Value::from(format_rational(c)));
        }
        Value::Object(m)
    }
}

/// `sum_{d | n} d^e`.
pub fn sigma(n: u64, e: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(e)).sum()
}

/// `prod_{n >= 1} (1 - q^n)^e` up to `q^(len-1)`.
pub fn euler_power(e: u32, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for m in 1..len {
        for _ in 0..e {
            for i in (m..len).rev() {
                let t = c[i - m].clone();
                c[i] -= t;
            }
        }
    }
    c
}

fn eisenstein(constant: i64, factor: i64, e: u32, prec: i64) -> QSeries1 {
    let terms = (0..prec).map(|n| {
        let c = if n == 0 { BigInt::from(constant) } else { BigInt::from(factor) * sigma(n as u64, e) };
        (n, Rational::from_integer(c))
    });
    QSeries1::new(1, prec, terms)
}

/// The quasimodular `E2 = 1 - 24 sum sigma_1(n) q^n`.
pub fn e2(prec: i64) -> QSeries1 {
    eisenstein(1, -24, 1, prec)
}

/// `q^(shift/denom) prod (1 - q^(m n))^e`, as a series with denominator
/// `denom`.
fn eta_like(denom: i64, shift: i64, m: i64, e: u32, prec: i64) -> QSeries1 {
    let len = prec.max(0) as usize;
    let c = euler_power(e, len / m as usize + 1);
    let terms = c.into_iter().enumerate().map(|(n, x)| (shift + denom * m * n as i64, Rational::from_integer(x)));
    QSeries1::new(denom, prec, terms)
}

/// `(eta(tau) eta(2 tau))^8`, the weight-8 cusp form on `Gamma0(2)`.
pub fn delta2(prec: i64) -> QSeries1 {
    eta_like(1, 1, 1, 8, prec).mul(&eta_like(1, 0, 2, 8, prec))
}

/// `eta(2 tau)^12 = q prod (1 - q^(2n))^12`, the weight-6 newform on
/// `Gamma0(4)`.
pub fn eta2_12(prec: i64) -> QSeries1 {
    eta_like(1, 1, 2, 12, prec)
}

/// `e4`, `e6`, `delta`, `eta12` (`q^(1/2) prod (1 - q^n)^12`, denominator 2)
/// and `E2_2 = 2 E2(2 tau) - E2(tau)`.
pub fn named_qexp(name: &str, prec: i64) -> Result<QSeries1, QFormError> {
    if prec < 1 {
        return Err(QFormError::Precision(format!("precision {prec} < 1")));
    }
    Ok(match name {
        "e4" => eisenstein(1, 240, 3, prec),
        "e6" => eisenstein(1, -504, 5, prec),
        "delta" => eta_like(1, 1, 1, 24, prec),
        "eta12" => eta_like(2, 1, 1, 12, prec),
        "E2_2" => {
            let e = e2(prec);
            e.rescale(2).truncate(prec).scale(&Rational::from_integer(2.into())).sub(&e)
        }
        _ => return Err(QFormError::UnknownName(name.to_string())),
    })
}

/// Hecke operator on `S_k(Gamma0(N))`: `T_p` for `p` not dividing `N`
/// (`a(n) -> a(pn) + p^(k-1) a(n/p)`), `U_p` otherwise.
pub fn hecke_tp(f: &QSeries1, k: u32, level: u32, p: u32) -> Result<QSeries1, QFormError> {
    if f.denom != 1 {
        return Err(QFormError::Unsupported("Hecke operators need integral exponents".into()));
    }
    let p64 = p as i64;
    let prec = (f.prec + p64 - 1) / p64;
    if prec < 1 {
        return Err(QFormError::Precision(format!("precision {} too small for T_{p}", f.prec)));
    }
    let pk = Rational::from_integer(BigInt::from(p).pow(k - 1));
    let new_level = level % p == 0;
    let terms = (0..prec).map(|n| {
        let mut c = f.coeff(p64 * n);
        if !new_level && n % p64 == 0 {
            c += &pk * f.coeff(n / p64);
        }
        (n, c)
    });
    Ok(QSeries1::new(1, prec, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn delta_expansion() {
        let d = named_qexp("delta", 6).unwrap();
        assert_eq!(d, QSeries1::from_ints(&[0, 1, -24, 252, -1472, 4830]));
    }

    #[test]
    fn eta12_leading_term() {
        let e = named_qexp("eta12", 4).unwrap();
        assert_eq!(e.denom(), 2);
        assert_eq!(e.leading(), Some((Rational::new(1.into(), 2.into()), int(1))));
        assert_eq!(e.coeff_scaled(3), int(-12));
        assert_eq!(e.mul(&e).reduced(), named_qexp("delta", 4).unwrap().truncate(4).reduced());
    }

    #[test]
    fn classical_identity() {
        let e4 = named_qexp("e4", 10).unwrap();
        let e6 = named_qexp("e6", 10).unwrap();
        let d = named_qexp("delta", 10).unwrap();
        assert_eq!(e4.pow(3).sub(&e6.pow(2)), d.scale(&int(1728)));
    }

    #[test]
    fn e2_2_is_weight_two_eisenstein() {
        let g = named_qexp("E2_2", 6).unwrap();
        assert_eq!(g, QSeries1::from_ints(&[1, 24, 24, 96, 24, 144]));
    }

    #[test]
    fn hecke_on_delta() {
        let d = named_qexp("delta", 20).unwrap();
        let t2 = hecke_tp(&d, 12, 1, 2).unwrap();
        assert_eq!(t2.coeff(1), int(-24));
        assert_eq!(t2, d.truncate(10).scale(&int(-24)));
        assert!(hecke_tp(&QSeries1::zero(10), 12, 1, 3).unwrap().is_zero());
    }

    #[test]
    fn json_keys() {
        let v = named_qexp("eta12", 2).unwrap().to_json();
        assert_eq!(v["1/2"], "1");
        assert_eq!(v["3/2"], "-12");
    }
}
