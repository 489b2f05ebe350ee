//! Exact scalars, sparse polynomials, the `Sym^j` action on coefficient
//! vectors, and rational generating series.
//!
//! Everything in the crate is computed over `Q`; there is no floating point
//! on any path that produces a reported number.

mod linalg;
mod mpoly;
mod qpoly;
mod sym;
mod tseries;

pub use linalg::QMatrix;
pub use mpoly::{Monomial, MPoly, Var, NVARS};
pub use qpoly::QPoly;
pub use sym::{sym_action, sym_matrix, IntMatrix2, SymVector};
pub use tseries::{tseries_coeff, RationalSeries};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("vector has length {got}, expected {expected} for Sym^{j}")]
    LengthMismatch { j: usize, expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serializes as `num/den`, omitting the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Gcd of a slice of integers (zero for an all-zero slice).
pub fn content(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Writes a list of rationals as `(common scale) * integers`. Returns the
/// primitive integer vector and the scale; an all-zero input gives scale 1.
pub fn integerize(xs: &[Rational]) -> (Vec<BigInt>, Rational) {
    let mut den = BigInt::one();
    for x in xs {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = content(&ints);
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (ints, Rational::new(g, den))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn abs_bits(x: &BigInt) -> u64 {
    x.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "7", "-3", "32/6089428125", "-8687121398144/81192375"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integerize_extracts_common_scale() {
        let (v, s) = integerize(&[rat(1, 135), rat(1, 30), rat(2, 45), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(9), BigInt::from(12), BigInt::zero()]);
        assert_eq!(s, rat(1, 270));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert!(is_prime(97) && !is_prime(91));
    }
}
