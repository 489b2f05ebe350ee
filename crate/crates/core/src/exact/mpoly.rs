use super::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Number of variables: the sextic coefficients `a0..a6` and `x1, x2`.
pub const NVARS: usize = 9;

/// Exponent vector, indexed `a0..a6, x1, x2`.
pub type Monomial = [u16; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A(u8),
    X1,
    X2,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::A(i) => {
                assert!(i <= 6, "sextic coefficient index out of range");
                i as usize
            }
            Var::X1 => 7,
            Var::X2 => 8,
        }
    }
}

/// Sparse polynomial over `Q` in `a0..a6, x1, x2`. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = 1;
        MPoly::from_terms([(m, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The universal binary sextic `sum_i a_i C(6,i) x1^(6-i) x2^i`.
    pub fn universal_sextic() -> Self {
        MPoly::from_terms((0..=6u16).map(|i| {
            let mut m = [0; NVARS];
            m[i as usize] = 1;
            m[7] = 6 - i;
            m[8] = i;
            (m, Rational::from_integer(super::binomial(6, i as u64)))
        }))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for (e, f) in m.iter_mut().zip(mb) {
                    *e += f;
                }
                *acc.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative `d^order / d v^order`.
    pub fn derivative(&self, v: Var, order: u32) -> MPoly {
        let idx = v.index();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m[idx] as u64;
            if e < order as u64 {
                continue;
            }
            let mut m2 = *m;
            m2[idx] -= order as u16;
            let f = super::falling(e, order as u64);
            out.add_term(m2, c * Rational::from_integer(f));
        }
        out
    }

    /// Total degree in `a0..a6` if all terms agree.
    pub fn degree_a(&self) -> Option<u32> {
        self.uniform_degree(|m| m[..7].iter().map(|&e| e as u32).sum())
    }

    /// Total degree in `x1, x2` if all terms agree.
    pub fn degree_x(&self) -> Option<u32> {
        self.uniform_degree(|m| m[7] as u32 + m[8] as u32)
    }

    fn uniform_degree(&self, f: impl Fn(&Monomial) -> u32) -> Option<u32> {
        let mut it = self.terms.keys().map(f);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Substitute rational values for `a0..a6`, leaving a polynomial in `x1, x2`.
    pub fn specialize_a(&self, values: &[Rational; 7]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, val) in values.iter().enumerate() {
                for _ in 0..m[i] {
                    v *= val;
                }
            }
            let mut mx = [0; NVARS];
            mx[7] = m[7];
            mx[8] = m[8];
            out.add_term(mx, v);
        }
        out
    }

    pub fn eval(&self, values: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, val) in values.iter().enumerate() {
                for _ in 0..m[i] {
                    v *= val;
                }
            }
            acc += v;
        }
        acc
    }

    pub fn integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom() == &BigInt::one())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const NAMES: [&str; NVARS] = ["a0", "a1", "a2", "a3", "a4", "a5", "a6", "x1", "x2"];
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[i])?,
                    _ => write!(f, "*{}^{}", NAMES[i], e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn sextic_is_bihomogeneous() {
        let f = MPoly::universal_sextic();
        assert_eq!(f.degree_a(), Some(1));
        assert_eq!(f.degree_x(), Some(6));
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn derivative_and_product() {
        let x1 = MPoly::var(Var::X1);
        let x2 = MPoly::var(Var::X2);
        let p = x1.pow(3).mul(&x2);
        let d = p.derivative(Var::X1, 2);
        assert_eq!(d, x1.mul(&x2).scale(&int(6)));
        assert!(p.derivative(Var::X2, 2).is_zero());
        assert!(x1.sub(&x1).is_zero());
    }

    #[test]
    fn mixed_degrees_are_reported() {
        let p = MPoly::var(Var::X1).add(&MPoly::var(Var::X1).pow(2));
        assert_eq!(p.degree_x(), None);
    }
}
