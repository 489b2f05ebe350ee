//! Hecke eigenvalues of degree-2 forms read off Fourier coefficients at
//! `[1,1,1]`, characteristic polynomials on small spaces, and the lift
//! identities of Saito–Kurokawa and Yoshida type.

use crate::exact::{format_rational, is_prime, sym_action, QMatrix, QPoly, Rational, SymVector};
use crate::fseries2::SeriesError;
use crate::siegel::SiegelForm;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("a([1,1,1]) vanishes")]
    ZeroLeading,
    #[error("components give different ratios ({0} and {1}): not an eigenform")]
    Inconsistent(String, String),
    #[error("coefficient a([{0},{1},{2}]) is beyond precision {3}")]
    Precision(i64, i64, i64, i64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("basis coefficients at [1,1,1] are linearly dependent")]
    Singular,
    #[error("missing eigendata: {0}")]
    MissingEigendata(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigen {
    Value(Rational),
    Charpoly(QPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub form: String,
    /// `T_p` or `T_{p^2}`, rendered as `T3`, `T9`, ...
    pub operator: String,
    pub eigen: Eigen,
    /// Coefficient indices read, in the form's own indexing.
    pub inputs: Vec<(i64, i64, i64)>,
}

impl EigenReport {
    pub fn eigenvalue(&self) -> Option<&Rational> {
        match &self.eigen {
            Eigen::Value(v) => Some(v),
            Eigen::Charpoly(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|n| json!([n.0, n.1, n.2])).collect();
        let mut v = json!({"form": self.form, "operator": self.operator, "inputs": inputs});
        match &self.eigen {
            Eigen::Value(x) => v["lambda"] = json!(format_rational(x)),
            Eigen::Charpoly(p) => {
                v["charpoly"] = json!(p.to_string());
                v["charpoly_coefficients"] = json!(p.to_strings());
            }
        }
        v
    }
}

fn pow(p: i64, e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::from(p).pow(e as u32))
    } else {
        Rational::one() / Rational::from_integer(BigInt::from(p).pow((-e) as u32))
    }
}

fn check_prime(p: i64) -> Result<(), HeckeError> {
    if p < 3 || !is_prime(p as u64) {
        return Err(HeckeError::NotOddPrime(p));
    }
    Ok(())
}

/// Reads coefficients while recording which indices were consumed.
struct Reader<'a> {
    f: &'a SiegelForm,
    inputs: Vec<(i64, i64, i64)>,
}

impl Reader<'_> {
    fn get(&mut self, n: (i64, i64, i64)) -> Result<SymVector, HeckeError> {
        self.inputs.push(n);
        self.f.series.coeff_checked(n.0, n.1, n.2).map_err(|_| HeckeError::Precision(n.0, n.1, n.2, self.f.prec()))
    }
}

/// `Sym^j` of `(p, -m; 0, 1)` applied to `v`.
fn sym(p: i64, m: i64, j: usize, v: &SymVector) -> SymVector {
    sym_action(&[[p, -m], [0, 1]], j, v).expect("length matches j")
}

/// `a_{T_p}([1,1,1])` for a form with the character.
fn tp_image(r: &mut Reader, p: i64) -> Result<SymVector, HeckeError> {
    let f = r.f;
    let (j, k) = (f.j, f.k);
    let mut out = r.get((p, p, p))?;
    if p == 3 {
        let t = sym(3, 1, j, &r.get((1, 3, 3))?);
        out = out.sub(&t.scaled(&pow(3, k - 2)));
    } else if p % 3 == 1 {
        let roots: Vec<i64> = (0..p).filter(|m| (1 + m + m * m) % p == 0).collect();
        for m in roots {
            let v = r.get(((1 + m + m * m) / p, 1 + 2 * m, p))?;
            let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
            out = out.add(&sym(p, m, j, &v).scaled(&(sign * pow(p, k - 2))));
        }
    }
    Ok(out)
}

/// Common ratio `v = lambda * base` across all nonzero components.
fn component_ratio(v: &SymVector, base: &SymVector) -> Result<Rational, HeckeError> {
    if base.is_zero() {
        return Err(HeckeError::ZeroLeading);
    }
    let mut lambda: Option<Rational> = None;
    for (x, b) in v.entries().iter().zip(base.entries()) {
        if b.is_zero() {
            if !x.is_zero() {
                return Err(HeckeError::Inconsistent(format_rational(x), "0".into()));
            }
            continue;
        }
        let q = x / b;
        match &lambda {
            None => lambda = Some(q),
            Some(l) if *l != q => return Err(HeckeError::Inconsistent(format_rational(l), format_rational(&q))),
            _ => {}
        }
    }
    Ok(lambda.expect("base is nonzero"))
}

fn form_name(f: &SiegelForm) -> String {
    f.provenance.first().cloned().unwrap_or_default()
}

/// Index of `[1,1,1]` in the form's own indexing: forms without the
/// character are supported on even `n1, n3`, so their `[1,1,1]` in the
/// classical (`e^{2 pi i}`) normalization is `[2,2,2]` here.
fn unit(f: &SiegelForm) -> i64 {
    if f.has_character { 1 } else { 2 }
}

/// Eigenvalue of `T_p` on an eigenform.
///
/// Forms with the character use the coefficient formulas at `[1,1,1]` for
/// every odd prime. For forms without it only `p = 2 mod 3` is supported,
/// as the ratio `a(p [1,1,1]) / a([1,1,1])`.
pub fn eigenvalue_tp(f: &SiegelForm, p: i64) -> Result<EigenReport, HeckeError> {
    check_prime(p)?;
    let mut r = Reader { f, inputs: Vec::new() };
    let u = unit(f);
    let base = r.get((u, u, u))?;
    let image = if f.has_character {
        tp_image(&mut r, p)?
    } else if p % 3 == 2 {
        r.get((u * p, u * p, u * p))?
    } else {
        return Err(HeckeError::Unsupported(format!("T_{p} on a form without character")));
    };
    let lambda = component_ratio(&image, &base)?;
    Ok(EigenReport { form: form_name(f), operator: format!("T{p}"), eigen: Eigen::Value(lambda), inputs: r.inputs })
}

/// Eigenvalue of `T_{p^2}` on an eigenform with the character, for `p = 3`
/// or `p = 2 mod 3`.
pub fn eigenvalue_tp2(f: &SiegelForm, p: i64) -> Result<EigenReport, HeckeError> {
    check_prime(p)?;
    if !f.has_character {
        return Err(HeckeError::Unsupported(format!("T_{} on a form without character", p * p)));
    }
    if p % 3 == 1 {
        return Err(HeckeError::Unsupported(format!("T_{} with p = 1 mod 3", p * p)));
    }
    let mut r = Reader { f, inputs: Vec::new() };
    let base = r.get((1, 1, 1))?;
    let q = p * p;
    let mut image = r.get((q, q, q))?;
    if p == 3 {
        let t = sym(3, 1, f.j, &r.get((3, 9, 9))?);
        image = image.sub(&t.scaled(&pow(3, f.k - 2)));
    }
    let lambda = component_ratio(&image, &base)?;
    Ok(EigenReport { form: form_name(f), operator: format!("T{q}"), eigen: Eigen::Value(lambda), inputs: r.inputs })
}

/// Characteristic polynomial of `T_p` on the span of `space`.
///
/// Writes `a_{T_p F_i}([1,1,1]) = sum_j M_ji a_{F_j}([1,1,1])`, which
/// determines `M` when the `a_{F_j}([1,1,1])` are independent.
pub fn charpoly_hecke(space: &[SiegelForm], p: i64) -> Result<EigenReport, HeckeError> {
    check_prime(p)?;
    let Some(first) = space.first() else {
        return Ok(EigenReport { form: String::new(), operator: format!("T{p}"), eigen: Eigen::Charpoly(QPoly::one()), inputs: vec![] });
    };
    if space.iter().any(|f| f.j != first.j || f.k != first.k || f.has_character != first.has_character) {
        return Err(HeckeError::Unsupported("forms of different weights".into()));
    }
    let mut inputs = Vec::new();
    let mut bases = Vec::new();
    let mut images = Vec::new();
    for f in space {
        let mut r = Reader { f, inputs: Vec::new() };
        let u = unit(f);
        bases.push(r.get((u, u, u))?.into_entries());
        images.push(if f.has_character {
            tp_image(&mut r, p)?
        } else if p % 3 == 2 {
            r.get((u * p, u * p, u * p))?
        } else {
            return Err(HeckeError::Unsupported(format!("T_{p} on a form without character")));
        });
        inputs.extend(r.inputs);
    }
    let a = QMatrix::from_columns(&bases).expect("equal lengths");
    if a.rank() < space.len() {
        return Err(HeckeError::Singular);
    }
    let cols: Vec<Vec<Rational>> = images
        .iter()
        .map(|v| a.solve(v.entries()).ok_or_else(|| HeckeError::Inconsistent("image".into(), "span".into())))
        .collect::<Result<_, _>>()?;
    let m = QMatrix::from_columns(&cols).expect("equal lengths");
    inputs.dedup();
    let names: Vec<String> = space.iter().map(form_name).collect();
    Ok(EigenReport { form: names.join(", "), operator: format!("T{p}"), eigen: Eigen::Charpoly(m.charpoly()), inputs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    SaitoKurokawa,
    Yoshida,
}

/// One identity compared by [`lift_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftLine {
    pub operator: String,
    pub computed: Rational,
    pub predicted: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub kind: LiftKind,
    pub p: i64,
    pub lines: Vec<LiftLine>,
    /// Identities that could not be evaluated, with the reason.
    pub skipped: Vec<String>,
}

impl LiftReport {
    pub fn holds(&self) -> bool {
        !self.lines.is_empty() && self.lines.iter().all(|l| l.computed == l.predicted)
    }

    pub fn to_json(&self) -> Value {
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|l| {
                json!({"operator": l.operator, "computed": format_rational(&l.computed),
                       "predicted": format_rational(&l.predicted), "ok": l.computed == l.predicted})
            })
            .collect();
        json!({"kind": format!("{:?}", self.kind), "p": self.p, "holds": self.holds(), "lines": lines, "skipped": self.skipped})
    }
}

/// Checks the eigenvalues of `f` at `p` (and `p^2` where supported and
/// within precision) against the prediction from elliptic eigenvalues.
///
/// * Saito–Kurokawa, `elliptic = [a_p(g)]` for `g` of weight `2k - 2`:
///   `lambda_p = p^(k-2) + a_p + p^(k-1)` and
///   `lambda_{p^2} = lambda_p^2 - (p^(k-1) + p^(k-2)) lambda_p + p^(2k-2)`.
/// * Yoshida type, `elliptic = [a_p(f), a_p(g)]`:
///   `lambda_p = a + b` and `lambda_{p^2} = a^2 + ab + b^2 - (2p + 1) p^j`.
pub fn lift_check(kind: LiftKind, f: &SiegelForm, p: i64, elliptic: &[Rational]) -> Result<LiftReport, HeckeError> {
    let lp = eigenvalue_tp(f, p)?.eigenvalue().cloned().expect("scalar eigenvalue");
    let k = f.k;
    let (pred_p, pred_p2) = match kind {
        LiftKind::SaitoKurokawa => {
            let [a] = elliptic else {
                return Err(HeckeError::MissingEigendata("one elliptic eigenvalue expected".into()));
            };
            let pred = pow(p, k - 2) + a + pow(p, k - 1);
            let p2 = &lp * &lp - (pow(p, k - 1) + pow(p, k - 2)) * &lp + pow(p, 2 * k - 2);
            (pred, p2)
        }
        LiftKind::Yoshida => {
            let [a, b] = elliptic else {
                return Err(HeckeError::MissingEigendata("two elliptic eigenvalues expected".into()));
            };
            let pred = a + b;
            let p2 = a * a + a * b + b * b - Rational::from_integer((2 * p + 1).into()) * pow(p, f.j as i64);
            (pred, p2)
        }
    };
    let mut lines = vec![LiftLine { operator: format!("T{p}"), computed: lp, predicted: pred_p }];
    let mut skipped = Vec::new();
    match eigenvalue_tp2(f, p) {
        Ok(r) => lines.push(LiftLine {
            operator: r.operator.clone(),
            computed: r.eigenvalue().cloned().expect("scalar"),
            predicted: pred_p2,
        }),
        Err(e @ (HeckeError::Unsupported(_) | HeckeError::Precision(..))) => skipped.push(format!("T{}: {e}", p * p)),
        Err(e) => return Err(e),
    }
    Ok(LiftReport { kind, p, lines, skipped })
}

/// `lambda - c` for a one-dimensional space.
pub fn linear_charpoly(c: &Rational) -> QPoly {
    QPoly::new(vec![-c.clone(), Rational::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::siegel::cached_base;
    use crate::theta2::BaseForm;

    #[test]
    fn chi5_t3_is_the_lift_value() {
        let c = cached_base(BaseForm::Chi5, 9).unwrap();
        let r = eigenvalue_tp(&c, 3).unwrap();
        assert_eq!(r.eigenvalue(), Some(&int(120)));
        assert_eq!(r.inputs, vec![(1, 1, 1), (3, 3, 3), (1, 3, 3)]);
        let r9 = eigenvalue_tp2(&c, 3).unwrap();
        let l = int(120);
        assert_eq!(r9.eigenvalue(), Some(&(&l * &l - int(81 + 27) * &l + int(6561))));
    }

    #[test]
    fn rejects_bad_input() {
        let c = cached_base(BaseForm::Chi5, 3).unwrap();
        assert_eq!(eigenvalue_tp(&c, 4), Err(HeckeError::NotOddPrime(4)));
        assert!(matches!(eigenvalue_tp(&c, 5), Err(HeckeError::Precision(..))));
        let zero = c.scaled(&int(0));
        assert_eq!(eigenvalue_tp(&zero, 3), Err(HeckeError::ZeroLeading));
    }

    #[test]
    fn one_dimensional_charpoly() {
        let c = cached_base(BaseForm::Chi5, 3).unwrap();
        let r = charpoly_hecke(&[c], 3).unwrap();
        assert_eq!(r.eigen, Eigen::Charpoly(linear_charpoly(&int(120))));
    }
}
