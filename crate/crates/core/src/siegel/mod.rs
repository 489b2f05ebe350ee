//! Siegel modular forms of degree 2: the map `mu` from covariants to forms,
//! the named constructions, diagonal vanishing orders and the decomposition
//! of diagonal restrictions.

mod decompose;
mod mu;
mod named;

pub use decompose::{restrict_and_decompose, ComponentDecomposition, Decomposition, TensorTerm};
pub use mu::{mu, mu_by_substitution, mu_generator};
pub use named::{construct_named, named_recipe, NamedForm, NAMED_FORMS};

use crate::covariant::CovariantError;
use crate::exact::{format_rational, Rational};
use crate::fseries2::{FSeries2, SeriesError};
use crate::qform1::QFormError;
use crate::theta2::{base_form, BaseForm, ThetaError};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    QForm(#[from] QFormError),
    #[error("unknown form {0:?}")]
    Unknown(String),
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("restriction has no decomposition in the basis: {0}")]
    Decompose(String),
    #[error("precision {0} too small")]
    Precision(i64),
}

/// A form of weight `(j, k)` with its Fourier series and a record of how it
/// was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelForm {
    pub j: usize,
    pub k: i64,
    pub has_character: bool,
    pub series: FSeries2,
    pub provenance: Vec<String>,
}

impl SiegelForm {
    pub fn new(j: usize, k: i64, has_character: bool, series: FSeries2, origin: impl Into<String>) -> Self {
        assert_eq!(series.j(), j, "series length does not match the weight");
        SiegelForm { j, k, has_character, series, provenance: vec![origin.into()] }
    }

    pub fn prec(&self) -> i64 {
        self.series.prec()
    }

    fn step(mut self, s: impl Into<String>) -> Self {
        self.provenance.push(s.into());
        self
    }

    pub fn truncate(&self, prec: i64) -> SiegelForm {
        SiegelForm { series: self.series.truncate(prec), ..self.clone() }
    }

    pub fn mul(&self, o: &SiegelForm) -> SiegelForm {
        let mut provenance = self.provenance.clone();
        provenance.push(format!("times weight ({}, {}) form", o.j, o.k));
        SiegelForm {
            j: self.j + o.j,
            k: self.k + o.k,
            has_character: self.has_character ^ o.has_character,
            series: self.series.mul(&o.series),
            provenance,
        }
    }

    /// Exact division by a scalar form; the weight drops by `g.k` and the
    /// characters combine.
    pub fn div(&self, g: &SiegelForm, label: &str) -> Result<SiegelForm, FormError> {
        assert_eq!(g.j, 0, "divisor must be scalar-valued");
        let series = self.series.div_exact(&g.series)?;
        let out = SiegelForm {
            j: self.j,
            k: self.k - g.k,
            has_character: self.has_character ^ g.has_character,
            series,
            provenance: self.provenance.clone(),
        };
        Ok(out.step(format!("divided by {label}")))
    }

    pub fn div_chi5(&self) -> Result<SiegelForm, FormError> {
        let c = cached_base(BaseForm::Chi5, self.prec())?;
        self.div(&c, "chi5")
    }

    pub fn scaled(&self, c: &Rational) -> SiegelForm {
        SiegelForm { series: self.series.scaled_by(c), ..self.clone() }.step(format!("scaled by {}", format_rational(c)))
    }

    /// Rescales so that entry `i` of `a(n)` equals `target`.
    pub fn normalized_at(&self, n: (i64, i64, i64), i: usize, target: &Rational) -> Result<SiegelForm, FormError> {
        let v = self.series.coeff_checked(n.0, n.1, n.2)?;
        let x = &v.entries()[i];
        if num_traits::Zero::is_zero(x) {
            return Err(FormError::Normalization(format!("a([{},{},{}])[{i}] is zero", n.0, n.1, n.2)));
        }
        let c = target / x;
        Ok(SiegelForm { series: self.series.scaled_by(&c), ..self.clone() }.step(format!(
            "normalized a([{},{},{}])[{i}] = {}",
            n.0,
            n.1,
            n.2,
            format_rational(target)
        )))
    }

    pub fn check_iota_symmetry(&self) -> bool {
        self.series.check_iota_symmetry(self.k, self.has_character)
    }

    /// Forms with the character are supported on indices with `n1` and `n3`
    /// odd; vacuous for forms without it.
    pub fn check_support_parity(&self) -> bool {
        if !self.has_character {
            return true;
        }
        self.series.terms().all(|(n, _)| {
            n.iter().all(|x| x.is_integer()) && n[0].to_integer().bit(0) && n[2].to_integer().bit(0)
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.series.to_json();
        v["k"] = json!(self.k);
        v["character"] = json!(self.has_character);
        v["provenance"] = json!(self.provenance);
        v
    }
}

fn base_cache() -> &'static Mutex<HashMap<BaseForm, SiegelForm>> {
    static CACHE: OnceLock<Mutex<HashMap<BaseForm, SiegelForm>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Base form at precision `prec`, reusing (and truncating) a cached
/// computation at higher precision when available.
pub fn cached_base(which: BaseForm, prec: i64) -> Result<SiegelForm, FormError> {
    if let Some(f) = base_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&which) {
        if f.prec() >= prec {
            return Ok(f.truncate(prec));
        }
    }
    let f = base_form(which, prec.max(2))?;
    base_cache().lock().unwrap_or_else(|e| e.into_inner()).insert(which, f.clone());
    Ok(f.truncate(prec))
}

/// Largest `d` such that `d` successive divisions by `chi5` succeed, with
/// the final quotient. Stops when a division is not exact, or when the
/// quotient can no longer be certified (precision below 1 or no known
/// nonzero coefficient).
pub fn vanishing_order_diagonal(f: &SiegelForm) -> (usize, SiegelForm) {
    let mut cur = f.clone();
    let mut d = 0;
    loop {
        if cur.prec() < 1 || cur.series.is_zero() {
            return (d, cur);
        }
        match cur.div_chi5() {
            Ok(q) if q.prec() >= 1 && !q.series.is_zero() => {
                cur = q;
                d += 1;
            }
            _ => return (d, cur),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi5_vanishes_to_order_one() {
        let c = cached_base(BaseForm::Chi5, 6).unwrap();
        let (d, q) = vanishing_order_diagonal(&c);
        assert_eq!(d, 1);
        assert_eq!(q.k, 0);
        assert!(!q.has_character);
        let c10 = cached_base(BaseForm::Chi10, 6).unwrap();
        assert_eq!(vanishing_order_diagonal(&c10).0, 2);
    }

    #[test]
    fn bookkeeping_through_division() {
        let c10 = cached_base(BaseForm::Chi10, 5).unwrap();
        let q = c10.div_chi5().unwrap();
        assert_eq!((q.k, q.has_character), (5, true));
        assert!(q.series.agrees_with(&cached_base(BaseForm::Chi5, 4).unwrap().series));
        assert_eq!(q.provenance.last().unwrap(), "divided by chi5");
    }
}
