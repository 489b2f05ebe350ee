use super::{CovariantError, ExprRing, GenId};
use crate::exact::{format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Expression tree over generator names, rational literals, `+`, `-`, `*`
/// and non-negative integer powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CovariantExpr {
    Gen(GenId),
    Num(Rational),
    Add(Box<CovariantExpr>, Box<CovariantExpr>),
    Sub(Box<CovariantExpr>, Box<CovariantExpr>),
    Neg(Box<CovariantExpr>),
    Mul(Box<CovariantExpr>, Box<CovariantExpr>),
    Pow(Box<CovariantExpr>, u32),
}

impl CovariantExpr {
    pub fn as_generator(&self) -> Option<GenId> {
        match self {
            CovariantExpr::Gen(id) => Some(*id),
            _ => None,
        }
    }

    /// Bidegree `(deg_a, deg_x)`; all summands must agree. A literal has
    /// degree `(0, 0)` and adapts to its neighbour in a sum only if zero.
    pub fn bidegree(&self) -> Result<(u32, u32), CovariantError> {
        use CovariantExpr::*;
        Ok(match self {
            Gen(id) => (id.a, id.b),
            Num(_) => (0, 0),
            Add(a, b) | Sub(a, b) => {
                let (da, db) = (a.bidegree()?, b.bidegree()?);
                if da != db {
                    return Err(CovariantError::MixedDegree(da, db));
                }
                da
            }
            Neg(a) => a.bidegree()?,
            Mul(a, b) => {
                let (da, db) = (a.bidegree()?, b.bidegree()?);
                (da.0 + db.0, da.1 + db.1)
            }
            Pow(a, e) => {
                let d = a.bidegree()?;
                (d.0 * e, d.1 * e)
            }
        })
    }

    /// Generators occurring in the expression.
    pub fn generators(&self) -> BTreeSet<GenId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let CovariantExpr::Gen(id) = e {
                out.insert(*id);
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&CovariantExpr)) {
        use CovariantExpr::*;
        f(self);
        match self {
            Gen(_) | Num(_) => {}
            Add(a, b) | Sub(a, b) | Mul(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Neg(a) | Pow(a, _) => a.visit(f),
        }
    }

    /// Evaluates the tree in a ring. Products with a literal factor become
    /// scalings.
    pub fn fold<T>(
        &self,
        leaf: &mut impl FnMut(GenId) -> T,
        num: &impl Fn(&Rational) -> T,
        ops: &impl ExprRing<T>,
    ) -> T {
        use CovariantExpr::*;
        match self {
            Gen(id) => leaf(*id),
            Num(c) => num(c),
            Add(a, b) => {
                let x = a.fold(leaf, num, ops);
                ops.add(x, b.fold(leaf, num, ops))
            }
            Sub(a, b) => {
                let x = a.fold(leaf, num, ops);
                ops.sub(x, b.fold(leaf, num, ops))
            }
            Neg(a) => ops.scale(a.fold(leaf, num, ops), &-Rational::one()),
            Mul(a, b) => match (&**a, &**b) {
                (Num(c), x) | (x, Num(c)) => ops.scale(x.fold(leaf, num, ops), c),
                _ => {
                    let x = a.fold(leaf, num, ops);
                    ops.mul(x, b.fold(leaf, num, ops))
                }
            },
            Pow(a, e) => ops.pow(a.fold(leaf, num, ops), *e),
        }
    }

    fn is_sum(&self) -> bool {
        matches!(self, CovariantExpr::Add(..) | CovariantExpr::Sub(..) | CovariantExpr::Neg(..))
    }
}

impl fmt::Display for CovariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CovariantExpr::*;
        let wrap = |e: &CovariantExpr, f: &mut fmt::Formatter<'_>| {
            if e.is_sum() {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Gen(id) => write!(f, "{id}"),
            Num(c) => write!(f, "{}", format_rational(c)),
            Add(a, b) => write!(f, "{a} + {b}"),
            Sub(a, b) => {
                write!(f, "{a} - ")?;
                wrap(b, f)
            }
            Neg(a) => {
                write!(f, "-")?;
                wrap(a, f)
            }
            Mul(a, b) => {
                wrap(a, f)?;
                write!(f, " ")?;
                wrap(b, f)
            }
            Pow(a, e) => {
                match **a {
                    Gen(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                write!(f, "^{e}")
            }
        }
    }
}

/// Parses expressions such as `"75 C_{4,0} - 8 C_{2,0}^2"` or
/// `"C_{3,12}(8 C_{1,6}C_{2,0} - 75 C_{3,6})"`.
///
/// ```text
/// expr    ::= ['-'] term (('+' | '-') term)*
/// term    ::= literal ['*'] product | literal | product
/// product ::= factor (['*'] factor)*
/// factor  ::= (name | '(' expr ')') ['^' int]
/// literal ::= int ['/' int]
/// name    ::= 'C_{' int ',' int '}' ['^{(' int ')}']
/// ```
pub fn parse_expr(text: &str) -> Result<CovariantExpr, CovariantError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CovariantError {
        CovariantError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), CovariantError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<BigInt, CovariantError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<u32, CovariantError> {
        let start = self.pos;
        let n = self.int()?;
        u32::try_from(n).map_err(|_| CovariantError::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn expr(&mut self) -> Result<CovariantExpr, CovariantError> {
        let mut e = if self.eat(b'-') { CovariantExpr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat(b'+') {
                e = CovariantExpr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(b'-') {
                e = CovariantExpr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'C') | Some(b'('))
    }

    fn term(&mut self) -> Result<CovariantExpr, CovariantError> {
        let lit = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let d = if self.eat(b'/') { self.int()? } else { BigInt::one() };
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Some(Rational::new(n, d))
            }
            _ => None,
        };
        let star = lit.is_some() && self.eat(b'*');
        if !self.starts_factor() {
            return match lit {
                Some(c) if !star => Ok(CovariantExpr::Num(c)),
                _ => Err(self.err("expected a generator or '('")),
            };
        }
        let mut e = self.factor()?;
        loop {
            let star = self.eat(b'*');
            if self.starts_factor() {
                e = CovariantExpr::Mul(Box::new(e), Box::new(self.factor()?));
            } else if star {
                return Err(self.err("expected a factor after '*'"));
            } else {
                break;
            }
        }
        Ok(match lit {
            Some(c) => CovariantExpr::Mul(Box::new(CovariantExpr::Num(c)), Box::new(e)),
            None => e,
        })
    }

    fn factor(&mut self) -> Result<CovariantExpr, CovariantError> {
        let base = if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            e
        } else {
            CovariantExpr::Gen(self.name()?)
        };
        if self.eat(b'^') {
            let e = if self.eat(b'{') {
                let e = self.small()?;
                self.expect(b'}')?;
                e
            } else {
                self.small()?
            };
            return Ok(CovariantExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn name(&mut self) -> Result<GenId, CovariantError> {
        let start = self.pos;
        self.expect(b'C')?;
        self.expect(b'_')?;
        self.expect(b'{')?;
        let a = self.small()?;
        self.expect(b',')?;
        let b = self.small()?;
        self.expect(b'}')?;
        // the variant superscript `^{(v)}` must be told apart from a power
        let save = self.pos;
        let mut variant = 0;
        if self.eat(b'^') && self.eat(b'{') && self.eat(b'(') {
            variant = self.small()?;
            self.expect(b')')?;
            self.expect(b'}')?;
        } else {
            self.pos = save;
        }
        let variant = u8::try_from(variant).map_err(|_| self.err("variant too large"))?;
        GenId::lookup(a, b, variant).ok_or_else(|| {
            let text = String::from_utf8_lossy(&self.s[start..self.pos]).trim().to_string();
            CovariantError::UnknownGenerator(text)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::GenId;

    #[test]
    fn single_leaf() {
        assert_eq!(parse_expr("C_{2,0}").unwrap(), CovariantExpr::Gen(GenId::new(2, 0)));
        assert_eq!(parse_expr(" C_{6,6}^{(2)} ").unwrap(), CovariantExpr::Gen(GenId::with_variant(6, 6, 2)));
    }

    #[test]
    fn igusa_recipe_has_two_terms() {
        let e = parse_expr("75 C_{4,0} - 8 C_{2,0}^2").unwrap();
        assert!(matches!(e, CovariantExpr::Sub(..)));
        assert_eq!(e.bidegree().unwrap(), (4, 0));
    }

    #[test]
    fn parenthesized_sum_as_factor() {
        let e = parse_expr("C_{3,12}(8 C_{1,6}C_{2,0}-75 C_{3,6})").unwrap();
        assert_eq!(e.bidegree().unwrap(), (6, 18));
        assert_eq!(e.generators().len(), 4);
    }

    #[test]
    fn powers_and_variants() {
        let e = parse_expr("C_{6,6}^{(1)}^2 * C_{3,2}^{3}").unwrap();
        assert_eq!(e.bidegree().unwrap(), (21, 18));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("C_{2,0} + * C_{4,0}") {
            Err(CovariantError::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_expr("C_{2,2}"), Err(CovariantError::UnknownGenerator("C_{2,2}".into())));
        assert!(matches!(parse_expr("C_{6,6}^{(3)}"), Err(CovariantError::UnknownGenerator(_))));
        assert!(matches!(parse_expr("(C_{2,0}"), Err(CovariantError::Syntax { .. })));
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let e = parse_expr("C_{2,0} + C_{4,0}").unwrap();
        assert!(matches!(e.bidegree(), Err(CovariantError::MixedDegree(..))));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "135 C_{1,6}^2 C_{4,6} + 56 C_{1,6} C_{2,0} C_{3,12} - 270 C_{2,8} C_{4,10} - 930 C_{3,6} C_{3,12}",
            "C_{3,12} (8 C_{1,6} C_{2,0} - 75 C_{3,6})",
            "-C_{2,0}^3 + 1/2 C_{6,0}",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
