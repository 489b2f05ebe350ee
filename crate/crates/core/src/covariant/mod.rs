//! Covariants of the binary sextic: transvectants, the 26 generators of the
//! covariant ring, and expressions in them.

mod expr;

pub use expr::{parse_expr, CovariantExpr};

use crate::exact::{binomial, factorial, format_rational, MPoly, Rational, Var};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovariantError {
    #[error("transvectant order {k} exceeds the degrees ({m}, {n})")]
    Order { k: u32, m: u32, n: u32 },
    #[error("polynomial is not homogeneous in x1, x2")]
    NotHomogeneous,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("terms of different bidegree: {0:?} and {1:?}")]
    MixedDegree((u32, u32), (u32, u32)),
}

/// A bihomogeneous polynomial in `a0..a6` and `x1, x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant {
    pub poly: MPoly,
    pub deg_a: u32,
    pub deg_x: u32,
}

impl Covariant {
    /// Exponent vectors with their coefficients, in monomial order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.poly.terms().map(|(m, c)| json!({"exp": m.to_vec(), "coeff": format_rational(c)})).collect();
        json!({"deg_a": self.deg_a, "deg_x": self.deg_x, "terms": terms})
    }
}

/// Degree in `x1, x2`; `None` for the zero polynomial.
fn x_degree(f: &MPoly) -> Result<Option<u32>, CovariantError> {
    if f.is_zero() {
        return Ok(None);
    }
    f.degree_x().map(Some).ok_or(CovariantError::NotHomogeneous)
}

/// The `k`-th transvectant
/// `(m-k)!(n-k)!/(m!n!) sum_t (-1)^t C(k,t) d^k f/dx1^(k-t)dx2^t * d^k g/dx1^t dx2^(k-t)`.
pub fn transvectant(f: &MPoly, g: &MPoly, k: u32) -> Result<MPoly, CovariantError> {
    let (m, n) = match (x_degree(f)?, x_degree(g)?) {
        (Some(m), Some(n)) => (m, n),
        _ => return Ok(MPoly::zero()),
    };
    if k > m.min(n) {
        return Err(CovariantError::Order { k, m, n });
    }
    let mut acc = MPoly::zero();
    for t in 0..=k {
        let df = f.derivative(Var::X1, k - t).derivative(Var::X2, t);
        let dg = g.derivative(Var::X1, t).derivative(Var::X2, k - t);
        let c = Rational::from_integer(binomial(k as u64, t as u64));
        let term = df.mul(&dg).scale(&if t % 2 == 0 { c } else { -c });
        acc = acc.add(&term);
    }
    let pre = Rational::new(
        factorial((m - k) as u64) * factorial((n - k) as u64),
        factorial(m as u64) * factorial(n as u64),
    );
    Ok(acc.scale(&pre))
}

/// A generator `C_{a,b}`; `variant` distinguishes `C_{6,6}^{(1)}` and
/// `C_{6,6}^{(2)}` and is 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub a: u32,
    pub b: u32,
    pub variant: u8,
}

impl GenId {
    pub const fn new(a: u32, b: u32) -> Self {
        GenId { a, b, variant: 0 }
    }

    pub const fn with_variant(a: u32, b: u32, variant: u8) -> Self {
        GenId { a, b, variant }
    }

    /// Looks up `(a, b, variant)` in the generator table.
    pub fn lookup(a: u32, b: u32, variant: u8) -> Option<GenId> {
        let id = GenId { a, b, variant };
        TABLE.iter().any(|r| r.id == id).then_some(id)
    }

    pub fn parse(name: &str) -> Result<GenId, CovariantError> {
        parse_expr(name).ok().and_then(|e| e.as_generator()).ok_or_else(|| CovariantError::UnknownGenerator(name.into()))
    }

    /// All 26 generators in table order.
    pub fn all() -> Vec<GenId> {
        TABLE.iter().map(|r| r.id).collect()
    }

    pub fn is_invariant(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{},{}}}", self.a, self.b)?;
        if self.variant > 0 {
            write!(f, "^{{({})}}", self.variant)?;
        }
        Ok(())
    }
}

/// How a generator is built: `(left^lp, right^rp)_k`, or the sextic itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Sextic,
    Trans { left: GenId, lp: u32, right: GenId, rp: u32, k: u32 },
}

struct Row {
    id: GenId,
    recipe: Recipe,
}

const fn g(a: u32, b: u32) -> GenId {
    GenId::new(a, b)
}

const fn tr(a: u32, b: u32, left: GenId, right: GenId, rp: u32, k: u32) -> Row {
    Row { id: GenId::new(a, b), recipe: Recipe::Trans { left, lp: 1, right, rp, k } }
}

const F: GenId = g(1, 6);

const TABLE: [Row; 26] = [
    Row { id: F, recipe: Recipe::Sextic },
    tr(2, 0, F, F, 1, 6),
    tr(2, 4, F, F, 1, 4),
    tr(2, 8, F, F, 1, 2),
    tr(3, 2, F, g(2, 4), 1, 4),
    tr(3, 6, F, g(2, 4), 1, 2),
    tr(3, 8, F, g(2, 4), 1, 1),
    tr(3, 12, F, g(2, 8), 1, 1),
    tr(4, 0, g(2, 4), g(2, 4), 1, 4),
    tr(4, 4, F, g(3, 2), 1, 2),
    tr(4, 6, F, g(3, 2), 1, 1),
    tr(4, 10, g(2, 8), g(2, 4), 1, 1),
    tr(5, 2, g(2, 4), g(3, 2), 1, 2),
    tr(5, 4, g(2, 4), g(3, 2), 1, 1),
    tr(5, 8, g(2, 8), g(3, 2), 1, 1),
    tr(6, 0, g(3, 2), g(3, 2), 1, 2),
    Row {
        id: GenId::with_variant(6, 6, 1),
        recipe: Recipe::Trans { left: g(3, 6), lp: 1, right: g(3, 2), rp: 1, k: 1 },
    },
    Row {
        id: GenId::with_variant(6, 6, 2),
        recipe: Recipe::Trans { left: g(3, 8), lp: 1, right: g(3, 2), rp: 1, k: 2 },
    },
    tr(7, 2, F, g(3, 2), 2, 4),
    tr(7, 4, F, g(3, 2), 2, 3),
    tr(8, 2, g(2, 4), g(3, 2), 2, 3),
    tr(9, 4, g(3, 8), g(3, 2), 2, 4),
    tr(10, 0, F, g(3, 2), 3, 6),
    tr(10, 2, F, g(3, 2), 3, 5),
    tr(12, 2, g(3, 8), g(3, 2), 3, 6),
    tr(15, 0, g(3, 8), g(3, 2), 4, 8),
];

pub fn recipe(id: GenId) -> Recipe {
    TABLE.iter().find(|r| r.id == id).map(|r| r.recipe).expect("GenId values come from the table")
}

/// Generator polynomials built from a given sextic, memoized. The universal
/// sextic gives the covariants; a specialized one gives their values on a
/// particular binary form.
pub struct GeneratorCache {
    base: MPoly,
    cache: HashMap<GenId, Arc<MPoly>>,
}

impl GeneratorCache {
    pub fn new(base: MPoly) -> Self {
        GeneratorCache { base, cache: HashMap::new() }
    }

    /// Cache over the sextic with the given coefficients `a0..a6`.
    pub fn specialized(a: &[Rational; 7]) -> Self {
        Self::new(MPoly::universal_sextic().specialize_a(a))
    }

    pub fn get(&mut self, id: GenId) -> Arc<MPoly> {
        if let Some(p) = self.cache.get(&id) {
            return p.clone();
        }
        let p = match recipe(id) {
            Recipe::Sextic => self.base.clone(),
            Recipe::Trans { left, lp, right, rp, k } => {
                let l = self.get(left).pow(lp);
                let r = self.get(right).pow(rp);
                transvectant(&l, &r, k).expect("table recipes are well formed")
            }
        };
        let p = Arc::new(p);
        self.cache.insert(id, p.clone());
        p
    }
}

fn universal() -> &'static Mutex<GeneratorCache> {
    static CACHE: OnceLock<Mutex<GeneratorCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(GeneratorCache::new(MPoly::universal_sextic())))
}

/// The generator as a covariant of the universal sextic.
pub fn generator(id: GenId) -> Covariant {
    let poly = universal().lock().unwrap_or_else(|e| e.into_inner()).get(id);
    Covariant { poly: (*poly).clone(), deg_a: id.a, deg_x: id.b }
}

pub fn generator_by_name(name: &str) -> Result<Covariant, CovariantError> {
    Ok(generator(GenId::parse(name)?))
}

/// Expands an expression into a covariant of the universal sextic.
pub fn eval_expr(e: &CovariantExpr) -> Result<Covariant, CovariantError> {
    let (deg_a, deg_x) = e.bidegree()?;
    let poly = e.fold(&mut |id| generator(id).poly, &|c| MPoly::constant(c.clone()), &MPolyOps);
    Ok(Covariant { poly, deg_a, deg_x })
}

/// Evaluates an expression on a specific sextic, giving a polynomial in
/// `x1, x2` only.
pub fn eval_expr_specialized(e: &CovariantExpr, cache: &mut GeneratorCache) -> Result<MPoly, CovariantError> {
    e.bidegree()?;
    Ok(e.fold(&mut |id| (*cache.get(id)).clone(), &|c| MPoly::constant(c.clone()), &MPolyOps))
}

/// Ring operations used when folding an expression tree.
pub trait ExprRing<T> {
    fn add(&self, a: T, b: T) -> T;
    fn sub(&self, a: T, b: T) -> T;
    fn mul(&self, a: T, b: T) -> T;
    fn scale(&self, a: T, c: &Rational) -> T;
    fn pow(&self, a: T, e: u32) -> T;
}

struct MPolyOps;

impl ExprRing<MPoly> for MPolyOps {
    fn add(&self, a: MPoly, b: MPoly) -> MPoly {
        a.add(&b)
    }
    fn sub(&self, a: MPoly, b: MPoly) -> MPoly {
        a.sub(&b)
    }
    fn mul(&self, a: MPoly, b: MPoly) -> MPoly {
        a.mul(&b)
    }
    fn scale(&self, a: MPoly, c: &Rational) -> MPoly {
        a.scale(c)
    }
    fn pow(&self, a: MPoly, e: u32) -> MPoly {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn xpoly(terms: &[(i64, u16, u16)]) -> MPoly {
        MPoly::from_terms(terms.iter().map(|&(c, e1, e2)| {
            let mut m = [0; 9];
            m[7] = e1;
            m[8] = e2;
            (m, int(c))
        }))
    }

    #[test]
    fn small_transvectants() {
        assert_eq!(transvectant(&xpoly(&[(1, 2, 0)]), &xpoly(&[(1, 0, 2)]), 2).unwrap(), MPoly::one());
        let s = xpoly(&[(1, 6, 0), (1, 0, 6)]);
        assert_eq!(transvectant(&s, &s, 6).unwrap(), MPoly::constant(int(2)));
        let f = MPoly::universal_sextic();
        for k in [1, 3, 5] {
            assert!(transvectant(&f, &f, k).unwrap().is_zero());
        }
    }

    #[test]
    fn transvectant_errors() {
        let a = xpoly(&[(1, 2, 0)]);
        assert!(matches!(transvectant(&a, &a, 3), Err(CovariantError::Order { .. })));
        let bad = xpoly(&[(1, 2, 0), (1, 1, 0)]);
        assert_eq!(transvectant(&bad, &a, 1), Err(CovariantError::NotHomogeneous));
    }

    #[test]
    fn table_has_26_entries_with_distinct_ids() {
        let mut ids = GenId::all();
        assert_eq!(ids.len(), 26);
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 26);
        assert_eq!(ids.iter().filter(|i| i.is_invariant()).count(), 5);
    }

    #[test]
    fn low_degree_generators_are_bihomogeneous() {
        for id in GenId::all().into_iter().filter(|i| i.a <= 6) {
            let c = generator(id);
            assert!(!c.poly.is_zero(), "{id} vanished");
            assert_eq!(c.poly.degree_a(), Some(id.a), "{id}");
            assert_eq!(c.poly.degree_x(), Some(id.b), "{id}");
        }
    }

    #[test]
    fn sextic_and_first_invariant() {
        assert_eq!(generator(F).poly, MPoly::universal_sextic());
        let c20 = generator(g(2, 0)).poly;
        // (f,f)_6 = 2 (a0 a6 - 6 a1 a5 + 15 a2 a4 - 10 a3^2)
        let mut m = [0u16; 9];
        m[3] = 2;
        assert_eq!(c20.coeff(&m), int(-20));
        m = [0; 9];
        m[0] = 1;
        m[6] = 1;
        assert_eq!(c20.coeff(&m), int(2));
    }
}
