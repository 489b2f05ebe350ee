use super::{delta2, eta2_12, hecke_tp, named_qexp, QFormError, QSeries1};
use crate::exact::{tseries_coeff, QMatrix, Rational, RationalSeries};
use num_traits::Zero;

/// Monomials `e4^a e6^b` of weight `w` (the basis of `M_w(SL2(Z))`).
pub fn level1_basis(w: u32, prec: i64) -> Vec<QSeries1> {
    let e4 = named_qexp("e4", prec.max(1)).expect("known name");
    let e6 = named_qexp("e6", prec.max(1)).expect("known name");
    let mut out = Vec::new();
    if w % 2 == 1 {
        return out;
    }
    for b in 0..=w / 6 {
        let rest = w - 6 * b;
        if rest % 4 == 0 {
            out.push(e4.pow(rest / 4).mul(&e6.pow(b)));
        }
    }
    out
}

/// `eta^12 e4^a e6^b` of total weight `w` (denominator 2 exponents).
pub fn eta12_basis(w: u32, prec: i64) -> Vec<QSeries1> {
    if w < 6 {
        return Vec::new();
    }
    let eta = named_qexp("eta12", prec.max(1)).expect("known name");
    level1_basis(w - 6, prec).iter().map(|f| eta.mul(&f.with_denom(2))).collect()
}

fn weight2_monomials(g1: &QSeries1, g2: &QSeries1, w: u32) -> Vec<QSeries1> {
    (0..=w / 2).map(|i| g1.pow(i).mul(&g2.pow(w / 2 - i))).collect()
}

/// Expected `dim S_k(Gamma0(N))` from the generating series of the level-1
/// dimensions `a_k`, the level-2 series `b_k` and the level-4 new series
/// `c_k`: `a_k`, `a_k + b_k`, `a_k + 2 b_k + c_k`.
pub fn expected_dim(k: u32, level: u32) -> usize {
    let a = RationalSeries::monomial_over(12, &[4, 6]);
    let b = RationalSeries::monomial_over(8, &[2, 6]);
    let c = RationalSeries::monomial_over(6, &[4, 6]);
    let (a, b, c) = (
        tseries_coeff(&a, k as usize) as usize,
        tseries_coeff(&b, k as usize) as usize,
        tseries_coeff(&c, k as usize) as usize,
    );
    match level {
        1 => a,
        2 => a + b,
        4 => a + 2 * b + c,
        _ => unreachable!("levels are checked by the caller"),
    }
}

/// Spanning set of `S_k(Gamma0(N))`, before echelonization.
fn spanning_set(k: u32, level: u32, prec: i64) -> Vec<QSeries1> {
    match level {
        1 if k >= 12 => {
            let d = named_qexp("delta", prec).expect("known name");
            level1_basis(k - 12, prec).iter().map(|f| d.mul(f)).collect()
        }
        2 if k >= 8 => {
            let g1 = named_qexp("E2_2", prec).expect("known name");
            let e4 = named_qexp("e4", prec).expect("known name");
            let d2 = delta2(prec);
            let w = k - 8;
            (0..=w / 4).map(|l| d2.mul(&g1.pow((w - 4 * l) / 2)).mul(&e4.pow(l))).collect()
        }
        4 if k >= 6 => {
            let g1 = named_qexp("E2_2", prec).expect("known name");
            let g2 = g1.rescale(2).truncate(prec);
            let eta = eta2_12(prec);
            weight2_monomials(&g1, &g2, k - 6).iter().map(|f| eta.mul(f)).collect()
        }
        _ => Vec::new(),
    }
}

/// Echelonized basis of `S_k(Gamma0(N))` for `N` in `{1, 2, 4}`: each
/// element has a pivot exponent where it is 1 and all others vanish. The
/// dimension is checked against the generating series.
pub fn cusp_basis(k: u32, level: u32, prec: i64) -> Result<Vec<QSeries1>, QFormError> {
    Ok(CuspSpace::new(k, level, prec)?.basis)
}

/// `S_k(Gamma0(N))` with an echelon basis, for linear algebra with Hecke
/// operators.
#[derive(Clone, Debug)]
pub struct CuspSpace {
    pub k: u32,
    pub level: u32,
    basis: Vec<QSeries1>,
    pivots: Vec<i64>,
}

impl CuspSpace {
    pub fn new(k: u32, level: u32, prec: i64) -> Result<CuspSpace, QFormError> {
        if ![1, 2, 4].contains(&level) {
            return Err(QFormError::Unsupported(format!("level {level}")));
        }
        if k % 2 == 1 || k < 4 {
            return Err(QFormError::Unsupported(format!("weight {k}")));
        }
        let expected = expected_dim(k, level);
        let span = spanning_set(k, level, prec);
        if span.is_empty() {
            return if expected == 0 {
                Ok(CuspSpace { k, level, basis: Vec::new(), pivots: Vec::new() })
            } else {
                Err(QFormError::Dimension { k, level, expected, got: 0 })
            };
        }
        let n = prec as usize;
        let rows: Vec<Vec<Rational>> = span.iter().map(|f| f.to_vec(n)).collect();
        let (r, pivots) = QMatrix::from_rows(rows).expect("rows have equal length").rref();
        if pivots.len() != expected {
            return Err(QFormError::Dimension { k, level, expected, got: pivots.len() });
        }
        let basis = (0..pivots.len()).map(|i| QSeries1::from_rationals(r.row(i))).collect();
        Ok(CuspSpace { k, level, basis, pivots: pivots.into_iter().map(|p| p as i64).collect() })
    }

    /// Smallest working precision that supports `T_p` for `p <= pmax`:
    /// every image must still reach past the last pivot, which is bounded by
    /// the Sturm bound.
    pub fn work_prec(k: u32, level: u32, pmax: u32, prec: i64) -> i64 {
        let index = match level {
            1 => 1,
            2 => 3,
            _ => 6,
        };
        let sturm = (k * index / 12) as i64 + 2;
        prec.max(pmax as i64 * sturm)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QSeries1] {
        &self.basis
    }

    pub fn prec(&self) -> i64 {
        self.basis.first().map_or(i64::MAX, QSeries1::prec)
    }

    /// Coordinates of `f` in the echelon basis, checked on every exponent
    /// known for both.
    pub fn coords(&self, f: &QSeries1) -> Result<Vec<Rational>, QFormError> {
        if let Some(&last) = self.pivots.last() {
            if f.prec() <= last {
                return Err(QFormError::Precision(format!("need precision {} to read coordinates", last + 1)));
            }
        }
        let c: Vec<Rational> = self.pivots.iter().map(|&p| f.coeff(p)).collect();
        let rest = f.sub(&self.combine(&c));
        if !rest.is_zero() {
            return Err(QFormError::NotInSpace);
        }
        Ok(c)
    }

    pub fn combine(&self, c: &[Rational]) -> QSeries1 {
        let mut acc = QSeries1::zero(self.prec());
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    /// Matrix of a linear operator; column `i` holds the coordinates of the
    /// image of basis element `i`.
    pub fn operator_matrix(
        &self,
        op: impl Fn(&QSeries1) -> Result<QSeries1, QFormError>,
    ) -> Result<QMatrix, QFormError> {
        let cols = self.basis.iter().map(|b| self.coords(&op(b)?)).collect::<Result<Vec<_>, _>>()?;
        Ok(QMatrix::from_columns(&cols).unwrap_or_else(|_| QMatrix::zeros(0, 0)))
    }

    /// `T_p` (or `U_p` when `p` divides the level).
    pub fn hecke_matrix(&self, p: u32) -> Result<QMatrix, QFormError> {
        self.operator_matrix(|f| hecke_tp(f, self.k, self.level, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn level1_dimensions() {
        for k in (4..=40).step_by(2) {
            let s = CuspSpace::new(k, 1, 10).unwrap();
            assert_eq!(s.dim(), expected_dim(k, 1));
        }
        let b = cusp_basis(12, 1, 5).unwrap();
        assert_eq!(b, vec![named_qexp("delta", 5).unwrap()]);
    }

    #[test]
    fn level2_and_level4_dimensions() {
        assert_eq!(CuspSpace::new(8, 2, 10).unwrap().dim(), 1);
        assert_eq!(CuspSpace::new(14, 2, 12).unwrap().dim(), 2);
        assert_eq!(CuspSpace::new(6, 4, 10).unwrap().dim(), 1);
        for k in (6..=26).step_by(2) {
            assert_eq!(CuspSpace::new(k, 4, 40).unwrap().dim() as u32, k / 2 - 2);
        }
    }

    #[test]
    fn hecke_operators_commute() {
        for (k, n) in [(20, 1), (14, 2), (18, 2), (12, 4)] {
            let s = CuspSpace::new(k, n, CuspSpace::work_prec(k, n, 5, 0) * 3).unwrap();
            let t3 = s.hecke_matrix(3).unwrap();
            let t5 = s.hecke_matrix(5).unwrap();
            assert_eq!(t3.mul(&t5), t5.mul(&t3), "k = {k}, N = {n}");
        }
    }

    #[test]
    fn coordinates_of_a_multiple() {
        let s = CuspSpace::new(12, 1, 8).unwrap();
        let f = named_qexp("delta", 8).unwrap().scale(&int(-3));
        assert_eq!(s.coords(&f).unwrap(), vec![int(-3)]);
        assert_eq!(s.coords(&named_qexp("e4", 8).unwrap()), Err(QFormError::NotInSpace));
    }
}
