use super::{FormError, SiegelForm};
use crate::exact::{format_rational, QMatrix, Rational};
use crate::qform1::{named_qexp, QSeries1};
use num_traits::Zero;
use serde_json::{json, Value};

/// `coeff * left(tau1) * right(tau2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub coeff: Rational,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Index of the component (coefficient of `x^(j-l) y^l`).
    pub l: usize,
    /// Weights in `tau1` and `tau2`.
    pub weights: (i64, i64),
    pub terms: Vec<TensorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub j: usize,
    pub k: i64,
    pub has_character: bool,
    pub prec: i64,
    pub components: Vec<ComponentDecomposition>,
}

impl Decomposition {
    pub fn component(&self, l: usize) -> Option<&ComponentDecomposition> {
        self.components.iter().find(|c| c.l == l)
    }

    /// Components with at least one term.
    pub fn nonzero(&self) -> impl Iterator<Item = &ComponentDecomposition> {
        self.components.iter().filter(|c| !c.terms.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let terms: Vec<Value> = c
                    .terms
                    .iter()
                    .map(|t| json!({"coeff": format_rational(&t.coeff), "left": t.left, "right": t.right}))
                    .collect();
                json!({"l": c.l, "weights": [c.weights.0, c.weights.1], "terms": terms})
            })
            .collect();
        json!({"j": self.j, "k": self.k, "character": self.has_character, "prec": self.prec, "components": comps})
    }
}

fn power_label(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn label(parts: &[(&str, u32)]) -> String {
    let s: Vec<String> = parts.iter().filter_map(|(n, e)| power_label(n, *e)).collect();
    if s.is_empty() { "1".to_string() } else { s.join(" ") }
}

/// Monomials `e4^a e6^b` of weight `w` with their exponents.
fn eisenstein_monomials(w: i64) -> Vec<(u32, u32)> {
    if w < 0 || w % 2 == 1 {
        return Vec::new();
    }
    (0..=w / 6).filter(|b| (w - 6 * b) % 4 == 0).map(|b| (((w - 6 * b) / 4) as u32, b as u32)).collect()
}

/// Labelled basis of `M_w(SL2(Z))`, or of the forms with the character of
/// `eta^12` when `character` is set, as series in `e^{pi i tau}`.
fn labelled_basis(w: i64, character: bool, qprec: i64) -> Vec<(String, QSeries1)> {
    let e4 = named_qexp("e4", qprec).expect("known name");
    let e6 = named_qexp("e6", qprec).expect("known name");
    let mono = |a: u32, b: u32| e4.pow(a).mul(&e6.pow(b));
    let mut out = Vec::new();
    if character {
        let eta = named_qexp("eta12", qprec).expect("known name");
        for (a, b) in eisenstein_monomials(w - 6) {
            out.push((label(&[("eta12", 1), ("e4", a), ("e6", b)]), eta.mul(&mono(a, b).with_denom(2))));
        }
    } else {
        // one Eisenstein monomial, then Delta times the weight w - 12 basis
        if let Some(&(a, b)) = eisenstein_monomials(w).last() {
            out.push((label(&[("e4", a), ("e6", b)]), mono(a, b)));
        }
        let delta = named_qexp("delta", qprec).expect("known name");
        for (a, b) in eisenstein_monomials(w - 12) {
            out.push((label(&[("e4", a), ("e6", b), ("Delta", 1)]), delta.mul(&mono(a, b))));
        }
    }
    out.into_iter().map(|(l, f)| (l, f.with_denom(2))).collect()
}

/// Writes every component of the restriction of `f` to the diagonal as an
/// element of `M_{j+k-l} (x) M_{k+l}` (with characters when `f` has one),
/// using every cell `n1, n3 <= prec` of the restriction.
pub fn restrict_and_decompose(f: &SiegelForm) -> Result<Decomposition, FormError> {
    let r = f.series.restrict_diagonal();
    let prec = r.prec;
    if prec < 1 {
        return Err(FormError::Precision(prec));
    }
    let qprec = prec / 2 + 1;
    let mut components = Vec::new();
    for l in 0..=f.j {
        let weights = (f.j as i64 + f.k - l as i64, f.k + l as i64);
        let target: Vec<((i64, i64), Rational)> = (0..=prec)
            .flat_map(|a| (0..=prec).map(move |b| (a, b)))
            .map(|(a, b)| ((a, b), r.get(a, b).entries()[l].clone()))
            .collect();
        if target.iter().all(|(_, x)| x.is_zero()) {
            components.push(ComponentDecomposition { l, weights, terms: Vec::new() });
            continue;
        }
        let left = labelled_basis(weights.0, f.has_character, qprec);
        let right = labelled_basis(weights.1, f.has_character, qprec);
        let pairs: Vec<(&(String, QSeries1), &(String, QSeries1))> =
            left.iter().flat_map(|x| right.iter().map(move |y| (x, y))).collect();
        if pairs.is_empty() {
            return Err(FormError::Decompose(format!("component {l} is nonzero but weight {weights:?} has no forms")));
        }
        let rows: Vec<Vec<Rational>> = target
            .iter()
            .map(|((a, b), _)| pairs.iter().map(|(x, y)| x.1.coeff_scaled(*a) * y.1.coeff_scaled(*b)).collect())
            .collect();
        let m = QMatrix::from_rows(rows).expect("rows have equal length");
        if m.rank() < pairs.len() {
            return Err(FormError::Decompose(format!("component {l} is underdetermined at precision {prec}")));
        }
        let rhs: Vec<Rational> = target.into_iter().map(|(_, x)| x).collect();
        let c = m.solve(&rhs).ok_or_else(|| FormError::Decompose(format!("component {l} is not in the tensor space")))?;
        let terms = pairs
            .iter()
            .zip(c)
            .filter(|(_, c)| !c.is_zero())
            .map(|((x, y), coeff)| TensorTerm { coeff, left: x.0.clone(), right: y.0.clone() })
            .collect();
        components.push(ComponentDecomposition { l, weights, terms });
    }
    Ok(Decomposition { j: f.j, k: f.k, has_character: f.has_character, prec, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(labelled_basis(12, false, 4).len(), 2);
        assert_eq!(labelled_basis(16, false, 4).len(), 2);
        assert_eq!(labelled_basis(24, false, 4).len(), 3);
        assert_eq!(labelled_basis(10, true, 4).len(), 1);
        assert_eq!(labelled_basis(6, true, 4)[0].0, "eta12");
        assert_eq!(labelled_basis(16, false, 4)[1].0, "e4 Delta");
    }
}
