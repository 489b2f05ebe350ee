use super::{format_rational, ExactError, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// A 2x2 integer matrix, row major.
pub type IntMatrix2 = [[i64; 2]; 2];

/// Coordinates of an element of `Sym^j` in the monomial basis
/// `x1^(j-i) x2^i`, `i = 0..=j` (no binomial weights).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymVector {
    entries: Vec<Rational>,
}

impl SymVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        assert!(!entries.is_empty(), "Sym^j vectors have at least one entry");
        SymVector { entries }
    }

    pub fn zero(j: usize) -> Self {
        SymVector { entries: vec![Rational::zero(); j + 1] }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn j(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> SymVector {
        SymVector { entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &SymVector) -> SymVector {
        assert_eq!(self.j(), other.j());
        SymVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &SymVector) -> SymVector {
        assert_eq!(self.j(), other.j());
        SymVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    /// `c` with `other = c * self`, if such a scalar exists and `self != 0`.
    pub fn ratio_to(&self, other: &SymVector) -> Option<Rational> {
        if self.j() != other.j() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.is_zero() {
                if !b.is_zero() {
                    return None;
                }
                continue;
            }
            let r = b / a;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q != r => return None,
                _ => {}
            }
        }
        ratio
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(format_rational).collect()
    }
}

impl fmt::Display for SymVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// Matrix of `p(x) -> p(M^T x)` on `Sym^j` in the monomial basis; column `i`
/// is the image of `x1^(j-i) x2^i`.
///
/// `M^T x` sends `x1 -> m00 x1 + m10 x2` and `x2 -> m01 x1 + m11 x2`.
pub fn sym_matrix(m: &IntMatrix2, j: usize) -> Vec<Vec<BigInt>> {
    // powers of the two linear forms, as coefficient vectors in x1^(d-t) x2^t
    let lin1 = [BigInt::from(m[0][0]), BigInt::from(m[1][0])];
    let lin2 = [BigInt::from(m[0][1]), BigInt::from(m[1][1])];
    let powers = |lin: &[BigInt; 2]| {
        let mut out = vec![vec![BigInt::one()]];
        for d in 1..=j {
            let prev = &out[d - 1];
            let mut next = vec![BigInt::zero(); d + 1];
            for (t, c) in prev.iter().enumerate() {
                next[t] += c * &lin[0];
                next[t + 1] += c * &lin[1];
            }
            out.push(next);
        }
        out
    };
    let p1 = powers(&lin1);
    let p2 = powers(&lin2);
    let mut mat = vec![vec![BigInt::zero(); j + 1]; j + 1];
    for i in 0..=j {
        let a = &p1[j - i];
        let b = &p2[i];
        for (s, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in b.iter().enumerate() {
                mat[s + t][i] += x * y;
            }
        }
    }
    mat
}

pub fn sym_action(m: &IntMatrix2, j: usize, v: &SymVector) -> Result<SymVector, ExactError> {
    if v.entries.len() != j + 1 {
        return Err(ExactError::LengthMismatch { j, expected: j + 1, got: v.entries.len() });
    }
    let mat = sym_matrix(m, j);
    let out = mat
        .iter()
        .map(|row| {
            row.iter()
                .zip(&v.entries)
                .filter(|(c, _)| !c.is_zero())
                .fold(Rational::zero(), |acc, (c, x)| acc + x * Rational::from_integer(c.clone()))
        })
        .collect();
    Ok(SymVector::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ID: IntMatrix2 = [[1, 0], [0, 1]];

    #[test]
    fn identity_acts_trivially() {
        let v = SymVector::from_ints(&[1, -2, 3, 0, 5]);
        assert_eq!(sym_action(&ID, 4, &v).unwrap(), v);
    }

    #[test]
    fn diagonal_sign_alternation() {
        let v = SymVector::from_ints(&[1, 1, 1]);
        let w = sym_action(&[[1, 0], [0, -1]], 2, &v).unwrap();
        assert_eq!(w, SymVector::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn hecke_matrix_on_middle_monomial() {
        // x1 x2 -> (3 x1)(-x1 + x2)
        let e1 = SymVector::from_ints(&[0, 1, 0]);
        let w = sym_action(&[[3, -1], [0, 1]], 2, &e1).unwrap();
        assert_eq!(w, SymVector::from_ints(&[-3, 3, 0]));
    }

    #[test]
    fn j_one_is_the_matrix() {
        let m = [[2, -5], [7, 3]];
        let mat = sym_matrix(&m, 1);
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(mat[r][c], BigInt::from(m[r][c]));
            }
        }
    }

    #[test]
    fn length_mismatch() {
        let v = SymVector::from_ints(&[1, 2]);
        assert!(matches!(sym_action(&ID, 4, &v), Err(ExactError::LengthMismatch { .. })));
    }

    fn matmul(a: &IntMatrix2, b: &IntMatrix2) -> IntMatrix2 {
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
        fn sym_is_multiplicative(
            a in proptest::array::uniform4(-4i64..5),
            b in proptest::array::uniform4(-4i64..5),
            j in 0usize..=8,
            v in proptest::collection::vec(-20i64..20, 9),
        ) {
            let m1 = [[a[0], a[1]], [a[2], a[3]]];
            let m2 = [[b[0], b[1]], [b[2], b[3]]];
            let v = SymVector::from_ints(&v[..=j]);
            let lhs = sym_action(&matmul(&m1, &m2), j, &v).unwrap();
            let rhs = sym_action(&m1, j, &sym_action(&m2, j, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn identity_for_all_small_j(j in 0usize..=12, v in proptest::collection::vec(-50i64..50, 13)) {
            let v = SymVector::from_ints(&v[..=j]);
            prop_assert_eq!(sym_action(&ID, j, &v).unwrap(), v);
        }
    }
}
