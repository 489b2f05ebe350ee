use super::{cached_base, mu, FormError, SiegelForm};
use crate::covariant::parse_expr;
use crate::exact::Rational;
use crate::theta2::BaseForm;

/// How a named form is fixed after the divisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Keep the scalar produced by the generator recipes.
    Raw,
    /// Rescale so that entry `i` of `a(n)` is `num/den`.
    At { n: (i64, i64, i64), i: usize, num: i64, den: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedForm {
    pub id: &'static str,
    pub expr: &'static str,
    /// Number of `chi5` factors removed (a `chi10` counts twice).
    pub chi5_divisions: u32,
    /// Divide by `chi10` instead of `chi5^2`.
    pub use_chi10: bool,
    pub normalization: Normalization,
    /// Needs hours rather than minutes.
    pub stretch: bool,
}

const CHI18_7_1: &str = "C_{3,12}(8 C_{1,6}C_{2,0} - 75 C_{3,6})";
const CHI18_7_2: &str = "C_{1,6}^2 C_{4,6} - 2 C_{2,8}C_{4,10} - 3 C_{3,6}C_{3,12}";

const CHI24_C1: &str = "-499408 C_{1,6}^2 C_{2,0}^2 C_{3,12} - 1505385 C_{1,6}^3 C_{6,6}^{(1)} \
    - 14727825 C_{1,6}^2 C_{2,4} C_{5,8} + 6916455 C_{1,6}^2 C_{2,8} C_{5,4} \
    - 5728590 C_{1,6}^2 C_{3,12} C_{4,0} + 6972210 C_{1,6} C_{2,0} C_{2,8} C_{4,10} \
    + 4257120 C_{1,6} C_{2,0} C_{3,6} C_{3,12} + 2182950 C_{2,8}^2 C_{5,8} \
    + 11708550 C_{2,8} C_{3,6} C_{4,10} + 595350 C_{2,8} C_{3,12} C_{4,4} \
    + 35171325 C_{3,6}^2 C_{3,12} - 400950 C_{3,8}^3";

const CHI24_C2: &str = "-42235648 C_{1,6}^2 C_{2,0}^2 C_{3,12} + 4434583545 C_{1,6}^3 C_{6,6}^{(1)} \
    + 580982220 C_{1,6}^3 C_{6,6}^{(2)} + 4919972400 C_{1,6}^2 C_{2,4} C_{5,8} \
    + 4827362400 C_{1,6}^2 C_{3,12} C_{4,0} - 3504891600 C_{1,6} C_{2,0} C_{2,8} C_{4,10} \
    + 1245336960 C_{1,6} C_{2,0} C_{3,6} C_{3,12} - 4131252720 C_{2,8}^2 C_{5,8} \
    - 24904998720 C_{2,8} C_{3,6} C_{4,10} - 281640240 C_{2,8} C_{3,12} C_{4,4} \
    - 58751907480 C_{3,6}^2 C_{3,12} + 1375354080 C_{3,8}^3";

pub const NAMED_FORMS: [NamedForm; 9] = [
    NamedForm {
        id: "chi12_2",
        expr: "C_{3,12}",
        chi5_divisions: 2,
        use_chi10: true,
        normalization: Normalization::At { n: (1, 1, 1), i: 3, num: 2, den: 1 },
        stretch: false,
    },
    NamedForm {
        id: "chi14_7",
        expr: "C_{1,6}C_{3,8}",
        chi5_divisions: 2,
        use_chi10: false,
        normalization: Normalization::Raw,
        stretch: false,
    },
    NamedForm {
        id: "chi18_2",
        expr: "135 C_{1,6}^2 C_{4,6} + 56 C_{1,6}C_{2,0}C_{3,12} - 270 C_{2,8}C_{4,10} - 930 C_{3,6}C_{3,12}",
        chi5_divisions: 5,
        use_chi10: false,
        normalization: Normalization::Raw,
        stretch: false,
    },
    NamedForm {
        id: "chi18_7_1",
        expr: CHI18_7_1,
        chi5_divisions: 4,
        use_chi10: false,
        normalization: Normalization::Raw,
        stretch: false,
    },
    NamedForm {
        id: "chi18_7_2",
        expr: CHI18_7_2,
        chi5_divisions: 4,
        use_chi10: false,
        normalization: Normalization::Raw,
        stretch: false,
    },
    NamedForm {
        id: "chi20_2",
        expr: "224 C_{1,6}^2 C_{5,8} + 312 C_{1,6}C_{2,4}C_{4,10} - 560 C_{1,6}C_{2,8}C_{4,6} \
               - 108 C_{1,6}C_{3,6}C_{3,8} + 728 C_{2,0}C_{2,8}C_{3,12} - 1235 C_{2,4}^2 C_{3,12}",
        chi5_divisions: 6,
        use_chi10: false,
        normalization: Normalization::Raw,
        stretch: false,
    },
    NamedForm {
        id: "chi24_2_1",
        expr: CHI24_C1,
        chi5_divisions: 8,
        use_chi10: false,
        normalization: Normalization::At { n: (1, 1, 1), i: 3, num: 104, den: 1 },
        stretch: true,
    },
    NamedForm {
        id: "chi24_2_2",
        // 5368 F_{C_1} + 5 F_{C_2}, assembled in named_recipe
        expr: "",
        chi5_divisions: 8,
        use_chi10: false,
        normalization: Normalization::At { n: (1, 1, 1), i: 7, num: 2, den: 1 },
        stretch: true,
    },
    NamedForm {
        id: "chi36_3",
        expr: "297 C_{1,6}^2 C_{3,8}^3 - 8316 C_{1,6}C_{3,8}C_{3,12}C_{4,10} + 4116 C_{1,6}C_{3,12}^2 C_{4,6} \
               - 5488 C_{2,0}C_{3,12}^3 + 9030 C_{2,4}C_{3,8}C_{3,12}^2",
        chi5_divisions: 9,
        use_chi10: false,
        normalization: Normalization::At { n: (2, 2, 2), i: 7, num: 32, den: 6089428125 },
        stretch: true,
    },
];

/// The recipe for a named form, with the covariant expression text.
pub fn named_recipe(id: &str) -> Result<(NamedForm, String), FormError> {
    let nf = NAMED_FORMS.iter().find(|n| n.id == id).ok_or_else(|| FormError::Unknown(id.to_string()))?;
    let expr = if nf.id == "chi24_2_2" { format!("5368 ({CHI24_C1}) + 5 ({CHI24_C2})") } else { nf.expr.to_string() };
    Ok((*nf, expr))
}

/// Builds a named form certified to precision `prec`: `mu` of the recipe's
/// covariant at `prec` plus the division loss, the divisions, then the
/// normalization.
pub fn construct_named(id: &str, prec: i64) -> Result<SiegelForm, FormError> {
    let (nf, text) = named_recipe(id)?;
    let e = parse_expr(&text)?;
    let d = nf.chi5_divisions as i64;
    let work = prec + d;
    let mut f = mu(&e, work)?;
    if nf.use_chi10 {
        let c10 = cached_base(BaseForm::Chi10, work)?;
        for _ in 0..d / 2 {
            f = f.div(&c10, "chi10")?;
        }
    } else {
        for _ in 0..d {
            f = f.div_chi5()?;
        }
    }
    f = f.truncate(prec.min(f.prec()));
    let f = match nf.normalization {
        Normalization::Raw => f,
        Normalization::At { n, i, num, den } => f.normalized_at(n, i, &Rational::new(num.into(), den.into()))?,
    };
    let mut f = f;
    f.provenance.insert(0, format!("named form {id}"));
    Ok(f)
}
