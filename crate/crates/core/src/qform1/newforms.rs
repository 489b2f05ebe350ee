use super::{CuspSpace, QFormError, QSeries1};
use crate::exact::{format_rational, QMatrix, QPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// Eigendata of a newform or of a Galois orbit of newforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigendata {
    /// A newform with rational coefficients, normalized by `a(1) = 1`.
    Rational(QSeries1),
    /// An orbit with irrational coefficients: characteristic polynomials of
    /// `T_3` and `T_5` on the span of the orbit.
    Orbit { t3: QPoly, t5: QPoly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformData {
    pub k: u32,
    pub level: u32,
    pub eigen: Eigendata,
    /// Sign of the Fricke involution, level 2 only; `a(2) = -sign 2^(k/2-1)`.
    pub fricke_sign: Option<i8>,
}

impl NewformData {
    pub fn qexp(&self) -> Option<&QSeries1> {
        match &self.eigen {
            Eigendata::Rational(f) => Some(f),
            Eigendata::Orbit { .. } => None,
        }
    }

    /// `a(p)` of a rational newform.
    pub fn ap(&self, p: i64) -> Result<Rational, QFormError> {
        match &self.eigen {
            Eigendata::Rational(f) => f.coeff_checked(p),
            Eigendata::Orbit { .. } => Err(QFormError::Unsupported("orbit has irrational coefficients".into())),
        }
    }

    pub fn to_json(&self) -> Value {
        let eigen = match &self.eigen {
            Eigendata::Rational(f) => json!({"qexp": f.to_json()}),
            Eigendata::Orbit { t3, t5 } => json!({"charpoly_T3": t3.to_string(), "charpoly_T5": t5.to_string(),
                "coefficients_T3": t3.to_strings(), "coefficients_T5": t5.to_strings()}),
        };
        json!({"k": self.k, "level": self.level, "fricke_sign": self.fricke_sign, "eigen": eigen})
    }
}

/// Columns of `v` span an `a`-stable subspace; returns the matrix of `a` on
/// it in that basis.
fn restrict(a: &QMatrix, v: &[Vec<Rational>]) -> QMatrix {
    let basis = QMatrix::from_columns(v).expect("kernel vectors have equal length");
    let cols: Vec<Vec<Rational>> = v
        .iter()
        .map(|x| basis.solve(&a.mul_vec(x)).expect("subspace is stable under the operator"))
        .collect();
    QMatrix::from_columns(&cols).expect("equal lengths")
}

fn shifted(a: &QMatrix, lambda: &Rational) -> QMatrix {
    a.sub(&QMatrix::identity(a.rows()).scale(lambda))
}

fn combine_kernel(space: &CuspSpace, v: &[Vec<Rational>], c: &[Rational]) -> QSeries1 {
    let n = space.dim();
    let mut coords = vec![Rational::zero(); n];
    for (vec, x) in v.iter().zip(c) {
        for (slot, y) in coords.iter_mut().zip(vec) {
            *slot += x * y;
        }
    }
    space.combine(&coords)
}

/// Splits an operator-stable subspace (columns `sub`) into rational
/// eigenforms and irrational orbits by the rational roots of the `T_3`
/// characteristic polynomial.
fn split(
    space: &CuspSpace,
    sub: &[Vec<Rational>],
    t3: &QMatrix,
    t5: &QMatrix,
    prec: i64,
) -> Vec<Eigendata> {
    let mut out = Vec::new();
    if sub.is_empty() {
        return out;
    }
    let a3 = restrict(t3, sub);
    let (roots, cofactor) = a3.charpoly().integer_roots();
    for r in roots {
        for c in shifted(&a3, &Rational::from_integer(r)).kernel() {
            let f = combine_kernel(space, sub, &c);
            let a1 = f.coeff(1);
            out.push(Eigendata::Rational(f.scale(&(Rational::one() / a1)).truncate(prec.min(f.prec()))));
        }
    }
    if cofactor.degree().unwrap_or(0) > 0 {
        let orbit_coords = cofactor.eval_matrix(&a3).kernel();
        let orbit: Vec<Vec<Rational>> = orbit_coords
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); space.dim()];
                for (vec, x) in sub.iter().zip(c) {
                    for (slot, y) in v.iter_mut().zip(vec) {
                        *slot += x * y;
                    }
                }
                v
            })
            .collect();
        out.push(Eigendata::Orbit { t3: cofactor.monic(), t5: restrict(t5, &orbit).charpoly() });
    }
    out
}

/// Newforms of weight `k` on `Gamma0(N)`, `N` in `{2, 4}`, with expansions
/// to `prec`.
///
/// At level 2 the new space is the `U_2`-eigenspace for `a(2)^2 = 2^(k-2)`
/// (old forms have `|a(2)|^2 = 2^(k-1)` there), split by the sign of
/// `a(2)`. At level 4 the new part of the `T_3` characteristic polynomial
/// is what remains after removing the old factors with multiplicities 3
/// (level 1) and 2 (level 2).
pub fn newforms(k: u32, level: u32, prec: i64) -> Result<Vec<NewformData>, QFormError> {
    let work = CuspSpace::work_prec(k, level, 5, prec);
    let space = CuspSpace::new(k, level, work)?;
    let t3 = space.hecke_matrix(3)?;
    let t5 = space.hecke_matrix(5)?;
    let mut out = Vec::new();
    match level {
        2 => {
            let u2 = space.hecke_matrix(2)?;
            for sign in [1i8, -1] {
                let a2 = Rational::from_integer(-BigInt::from(sign) * BigInt::from(2).pow(k / 2 - 1));
                let sub = shifted(&u2, &a2).kernel();
                for eigen in split(&space, &sub, &t3, &t5, prec) {
                    out.push(NewformData { k, level, eigen, fricke_sign: Some(sign) });
                }
            }
        }
        4 => {
            let full = t3.charpoly();
            let old1 = level1_t3(k)?.pow(3);
            let old2 = level2_new_t3(k)?.pow(2);
            let (new, rem) = full.div_rem(&old1.mul(&old2));
            if !rem.is_zero() {
                return Err(QFormError::Unsupported("old factors do not divide the T_3 polynomial".into()));
            }
            let old = old1.mul(&old2);
            let (roots, cofactor) = new.integer_roots();
            let mut orbit_poly = cofactor;
            for r in roots {
                let lambda = Rational::from_integer(r);
                let ker = shifted(&t3, &lambda).kernel();
                if old.eval(&lambda).is_zero() || ker.len() != 1 {
                    // shares its T_3 eigenvalue with an old form
                    orbit_poly = orbit_poly.mul(&QPoly::linear(&lambda));
                    continue;
                }
                let f = space.combine(&ker[0]);
                let a1 = f.coeff(1);
                let f = f.scale(&(Rational::one() / a1));
                out.push(NewformData { k, level, eigen: Eigendata::Rational(f.truncate(prec.min(f.prec()))), fricke_sign: None });
            }
            if orbit_poly.degree().unwrap_or(0) > 0 {
                let sub = orbit_poly.eval_matrix(&t3).kernel();
                let t5p = restrict(&t5, &sub).charpoly();
                out.push(NewformData { k, level, eigen: Eigendata::Orbit { t3: orbit_poly.monic(), t5: t5p }, fricke_sign: None });
            }
        }
        _ => return Err(QFormError::Unsupported(format!("newforms at level {level}"))),
    }
    Ok(out)
}

fn level1_t3(k: u32) -> Result<QPoly, QFormError> {
    let s = CuspSpace::new(k, 1, CuspSpace::work_prec(k, 1, 3, 0))?;
    Ok(if s.dim() == 0 { QPoly::one() } else { s.hecke_matrix(3)?.charpoly() })
}

fn level2_new_t3(k: u32) -> Result<QPoly, QFormError> {
    let mut p = QPoly::one();
    for nf in newforms(k, 2, 4)? {
        p = p.mul(&match nf.eigen {
            Eigendata::Rational(f) => QPoly::linear(&f.coeff(3)),
            Eigendata::Orbit { t3, .. } => t3,
        });
    }
    Ok(p)
}

/// Summary line used in reports.
pub fn describe(nf: &NewformData) -> String {
    match &nf.eigen {
        Eigendata::Rational(f) => {
            let coeffs: Vec<String> = (1..f.prec().min(6)).map(|n| format_rational(&f.coeff(n))).collect();
            format!("k={} N={} sign={:?} a(1..)=[{}]", nf.k, nf.level, nf.fricke_sign, coeffs.join(", "))
        }
        Eigendata::Orbit { t3, .. } => format!("k={} N={} sign={:?} orbit T3: {t3}", nf.k, nf.level, nf.fricke_sign),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn rational(nfs: &[NewformData]) -> Vec<&QSeries1> {
        nfs.iter().filter_map(NewformData::qexp).collect()
    }

    #[test]
    fn weight_8_level_2() {
        let nfs = newforms(8, 2, 6).unwrap();
        assert_eq!(nfs.len(), 1);
        assert_eq!(nfs[0].fricke_sign, Some(1));
        assert_eq!(*rational(&nfs)[0], QSeries1::from_ints(&[0, 1, -8, 12, 64, -210]));
    }

    #[test]
    fn weight_6_level_4_is_eta_power() {
        let nfs = newforms(6, 4, 8).unwrap();
        assert_eq!(nfs.len(), 1);
        assert_eq!(*rational(&nfs)[0], super::super::eta2_12(8));
    }

    #[test]
    fn atkin_lehner_relation() {
        for k in (8..=26).step_by(2) {
            for nf in newforms(k, 2, 4).unwrap() {
                if let Some(f) = nf.qexp() {
                    assert_eq!(f.coeff(2) * f.coeff(2), Rational::from_integer(BigInt::from(2).pow(k - 2)));
                }
            }
        }
        let _ = int(0);
    }
}
