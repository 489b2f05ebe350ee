use super::{format_rational, QMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Univariate polynomial over `Q`, coefficients in ascending degree with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::new(vec![Rational::one()])
    }

    /// `x - r`.
    pub fn linear(r: &Rational) -> Self {
        QPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        (0..e).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (k, dc) in d.coeffs.iter().enumerate() {
                    rem[i + k] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &QMatrix) -> QMatrix {
        let n = m.rows();
        let mut acc = QMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&QMatrix::identity(n).scale(c));
        }
        acc
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer roots with multiplicity of a monic integer polynomial, plus the
    /// remaining cofactor. Candidates come from floating-point root
    /// approximations and every root is confirmed exactly.
    pub fn integer_roots(&self) -> (Vec<BigInt>, QPoly) {
        let mut rest = self.monic();
        let mut roots = Vec::new();
        if rest.degree().unwrap_or(0) == 0 || !rest.is_integral() {
            return (roots, rest);
        }
        'outer: loop {
            let Some(deg) = rest.degree() else { break };
            if deg == 0 {
                break;
            }
            for cand in rest.approximate_real_roots() {
                for delta in [0i64, -1, 1, -2, 2] {
                    let r = Rational::from_integer(&cand + BigInt::from(delta));
                    if rest.eval(&r).is_zero() {
                        let (q, _) = rest.div_rem(&QPoly::linear(&r));
                        rest = q;
                        roots.push(r.to_integer());
                        continue 'outer;
                    }
                }
            }
            break;
        }
        roots.sort();
        (roots, rest)
    }

    /// Rounded real parts of the (approximately real) complex roots.
    fn approximate_real_roots(&self) -> Vec<BigInt> {
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return vec![];
        }
        let lead = self.leading();
        let c: Vec<f64> = self.coeffs.iter().map(|x| (x / &lead).to_f64().unwrap_or(f64::NAN)).collect();
        if deg == 1 {
            return vec![BigInt::from((-c[0]).round() as i128)];
        }
        let bound = 1.0 + c[..deg].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        // Durand-Kerner iteration on complex pairs
        let mut z: Vec<(f64, f64)> = (0..deg)
            .map(|k| {
                let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64;
                (bound * t.cos() * 0.9, bound * t.sin() * 0.9)
            })
            .collect();
        let eval = |x: (f64, f64)| {
            let mut acc = (1.0, 0.0);
            for i in (0..deg).rev() {
                acc = (acc.0 * x.0 - acc.1 * x.1 + c[i], acc.0 * x.1 + acc.1 * x.0);
            }
            acc
        };
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..deg {
                let num = eval(z[i]);
                let mut den = (1.0, 0.0);
                for (k, zk) in z.iter().enumerate() {
                    if k != i {
                        let d = (z[i].0 - zk.0, z[i].1 - zk.1);
                        den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                    }
                }
                let n2 = den.0 * den.0 + den.1 * den.1;
                if n2 == 0.0 {
                    continue;
                }
                let q = ((num.0 * den.0 + num.1 * den.1) / n2, (num.1 * den.0 - num.0 * den.1) / n2);
                z[i] = (z[i].0 - q.0, z[i].1 - q.1);
                delta = delta.max(q.0.abs() + q.1.abs());
            }
            if delta < 1e-9 * bound {
                break;
            }
        }
        z.iter()
            .filter(|x| x.0.is_finite() && x.1.abs() <= 1e-6 * bound.max(1.0) + 0.5)
            .map(|x| BigInt::from(x.0.round() as i128))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { format_rational(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
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
    fn division_and_gcd() {
        let a = QPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = QPoly::from_ints(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&QPoly::from_ints(&[-1, 1]).mul(&QPoly::from_ints(&[2, 1]))), QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn integer_roots_of_products() {
        let p = QPoly::linear(&int(97956)).mul(&QPoly::from_ints(&[-3, 0, 1])).mul(&QPoly::linear(&int(-600)));
        let (roots, rest) = p.integer_roots();
        assert_eq!(roots, vec![BigInt::from(-600), BigInt::from(97956)]);
        assert_eq!(rest, QPoly::from_ints(&[-3, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_ints(&[600, 1]).to_string(), "x + 600");
        assert_eq!(QPoly::from_ints(&[-5, 0, -2, 1]).to_string(), "x^3 - 2x^2 - 5");
    }
}
