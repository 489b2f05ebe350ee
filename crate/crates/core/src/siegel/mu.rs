use super::{cached_base, FormError, SiegelForm};
use crate::covariant::{eval_expr, recipe, CovariantExpr, GenId, Recipe};
use crate::exact::{binomial, Rational};
use crate::fseries2::FSeries2;
use crate::theta2::BaseForm;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn generator_cache() -> &'static Mutex<HashMap<GenId, FSeries2>> {
    static CACHE: OnceLock<Mutex<HashMap<GenId, FSeries2>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `mu(C_{a,b})` as a series, certified to `prec`.
///
/// `mu` is a ring homomorphism that commutes with transvectants, so the
/// generator recipes are replayed on series starting from `mu(f) = chi6_3`.
/// Every `mu(C_{a,b})` vanishes to order `a`, so a factor of degree `a_i` in
/// a product of total degree `A` is only needed to precision
/// `prec - (A - a_i)`.
pub fn mu_generator(id: GenId, prec: i64) -> Result<FSeries2, FormError> {
    if let Some(s) = generator_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&id) {
        if s.prec() >= prec {
            return Ok(s.truncate(prec));
        }
    }
    let s = match recipe(id) {
        Recipe::Sextic => cached_base(BaseForm::Chi6_3, prec)?.series,
        Recipe::Trans { left, lp, right, rp, k } => {
            let (al, ar) = ((left.a * lp) as i64, (right.a * rp) as i64);
            let l = power(left, lp, prec - ar)?;
            let r = power(right, rp, prec - al)?;
            l.transvectant(&r, k as usize)?.truncate(prec)
        }
    };
    generator_cache().lock().unwrap_or_else(|e| e.into_inner()).insert(id, s.clone());
    Ok(s)
}

fn power(id: GenId, e: u32, prec: i64) -> Result<FSeries2, FormError> {
    let base = mu_generator(id, prec - (e as i64 - 1) * id.a as i64)?;
    Ok(base.pow(e).truncate(prec))
}

fn eval(e: &CovariantExpr, prec: i64) -> Result<FSeries2, FormError> {
    use CovariantExpr::*;
    let deg = |x: &CovariantExpr| x.bidegree().map(|d| d.0 as i64);
    Ok(match e {
        Gen(id) => mu_generator(*id, prec)?,
        Num(c) => FSeries2::one(prec).scaled_by(c),
        Add(a, b) => eval(a, prec)?.add(&eval(b, prec)?)?,
        Sub(a, b) => eval(a, prec)?.sub(&eval(b, prec)?)?,
        Neg(a) => eval(a, prec)?.scaled_by(&-Rational::one()),
        Mul(a, b) => match (&**a, &**b) {
            (Num(c), x) | (x, Num(c)) => eval(x, prec)?.scaled_by(c),
            _ => {
                let x = eval(a, prec - deg(b)?)?;
                let y = eval(b, prec - deg(a)?)?;
                x.mul(&y).truncate(prec)
            }
        },
        Pow(a, n) => {
            let x = eval(a, prec - (*n as i64 - 1) * deg(a)?)?;
            x.pow(*n).truncate(prec)
        }
    })
}

fn weight(e: &CovariantExpr) -> Result<(usize, i64, bool), FormError> {
    let (a, b) = e.bidegree()?;
    Ok((b as usize, 6 * a as i64 - b as i64 / 2, a % 2 == 1))
}

/// The form `mu(e)` of weight `(b, 6a - b/2)` and character `eps^a`, for an
/// expression of bidegree `(a, b)`.
pub fn mu(e: &CovariantExpr, prec: i64) -> Result<SiegelForm, FormError> {
    let (j, k, ch) = weight(e)?;
    let a = e.bidegree()?.0 as i64;
    let s = eval(e, prec)?;
    let s = if s.order() < a && !s.is_zero() { s.with_order(a) } else { s };
    Ok(SiegelForm::new(j, k, ch, s, format!("mu({e})")))
}

/// `mu(e)` by direct substitution of `a_i = chi6_3[i] / C(6, i)` into the
/// expanded covariant polynomial. Much slower than [`mu`]; kept as an
/// independent check of the series route.
pub fn mu_by_substitution(e: &CovariantExpr, prec: i64) -> Result<SiegelForm, FormError> {
    let (j, k, ch) = weight(e)?;
    let cov = eval_expr(e)?;
    let chi = cached_base(BaseForm::Chi6_3, prec)?.series;
    let comps: Vec<FSeries2> = (0..=6)
        .map(|i| chi.component(i).scaled_by(&Rational::new(One::one(), binomial(6, i as u64))))
        .collect();
    let mut powers: HashMap<(usize, u16), FSeries2> = HashMap::new();
    let mut parts: Vec<FSeries2> = (0..=j).map(|_| FSeries2::zero(0, 1, prec)).collect();
    for (m, c) in cov.poly.terms() {
        let mut t = FSeries2::one(prec);
        for (i, &ex) in m[..7].iter().enumerate() {
            if ex == 0 {
                continue;
            }
            let p = powers.entry((i, ex)).or_insert_with(|| comps[i].pow(ex as u32)).clone();
            t = t.mul(&p).truncate(prec);
        }
        let slot = m[8] as usize;
        parts[slot] = parts[slot].add_scaled(&t, c)?;
    }
    let mut s = FSeries2::from_components(&parts)?;
    if s.is_zero() {
        s = FSeries2::zero(j, 1, prec);
    }
    Ok(SiegelForm::new(j, k, ch, s, format!("mu({e}) by substitution")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::parse_expr;

    #[test]
    fn sextic_maps_to_chi6_3() {
        let f = mu(&parse_expr("C_{1,6}").unwrap(), 4).unwrap();
        assert_eq!((f.j, f.k, f.has_character), (6, 3, true));
        assert_eq!(f.series, cached_base(BaseForm::Chi6_3, 4).unwrap().series);
    }

    #[test]
    fn weights_follow_the_bidegree() {
        let f = mu(&parse_expr("C_{3,12}").unwrap(), 4).unwrap();
        assert_eq!((f.j, f.k, f.has_character), (12, 12, true));
        assert!(f.check_iota_symmetry());
    }

    #[test]
    fn substitution_agrees_with_series_route() {
        for s in ["C_{2,0}", "C_{2,4}", "C_{3,8}", "3 C_{2,0}^2 - C_{4,0}"] {
            let e = parse_expr(s).unwrap();
            let a = mu(&e, 5).unwrap();
            let b = mu_by_substitution(&e, 5).unwrap();
            assert!(a.series.agrees_with(&b.series), "{s}");
        }
    }

    #[test]
    fn images_vanish_to_the_degree() {
        let f = mu(&parse_expr("C_{2,8}").unwrap(), 5).unwrap();
        assert!(f.series.terms().all(|(n, _)| n[0] >= Rational::from_integer(2.into()) && n[2] >= Rational::from_integer(2.into())));
        assert!(!f.series.is_zero());
    }
}
