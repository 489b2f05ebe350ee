use std::fmt;

/// A generating function `p(t) / prod_i (1 - t^{d_i})` with integer numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    /// `(exponent, coefficient)` pairs of the numerator.
    pub numerator: Vec<(usize, i64)>,
    /// The `d_i >= 1` of the denominator factors.
    pub factors: Vec<usize>,
}

impl RationalSeries {
    /// `t^shift / prod (1 - t^d)`.
    pub fn monomial_over(shift: usize, factors: &[usize]) -> Self {
        RationalSeries { numerator: vec![(shift, 1)], factors: factors.to_vec() }
    }

    /// Coefficients of `t^0 ..= t^n`.
    pub fn coeffs(&self, n: usize) -> Vec<i64> {
        assert!(self.factors.iter().all(|&d| d >= 1), "denominator factors must be >= 1");
        let mut base = vec![0i64; n + 1];
        base[0] = 1;
        for &d in &self.factors {
            for i in d..=n {
                base[i] += base[i - d];
            }
        }
        let mut out = vec![0i64; n + 1];
        for &(e, c) in &self.numerator {
            for i in e..=n {
                out[i] += c * base[i - e];
            }
        }
        out
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs(n)[n]
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .numerator
            .iter()
            .map(|&(e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (e, 1) => format!("t^{e}"),
                (e, c) => format!("{c}t^{e}"),
            })
            .collect();
        let den: String = self.factors.iter().map(|d| format!("(1-t^{d})")).collect();
        write!(f, "({})/{}", num.join("+"), den)
    }
}

pub fn tseries_coeff(series: &RationalSeries, n: usize) -> i64 {
    series.coeff(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_cusp_series() {
        let a = RationalSeries::monomial_over(12, &[4, 6]);
        assert_eq!(tseries_coeff(&a, 12), 1);
        assert_eq!(tseries_coeff(&a, 11), 0);
        // dim S_k(SL2(Z)) by the floor(k/12) rule
        for k in (0..=80).step_by(2) {
            let expected = if k < 12 { 0 } else if k % 12 == 2 { k / 12 - 1 } else { k / 12 };
            assert_eq!(a.coeff(k), expected as i64, "k = {k}");
        }
    }

    #[test]
    fn c_series_leading_term() {
        let c = RationalSeries::monomial_over(6, &[4, 6]);
        assert_eq!(tseries_coeff(&c, 6), 1);
    }
}
