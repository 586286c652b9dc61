//! Power-monoid expressions: set literals, `*`, `^n`, `rev(...)` and parentheses.
//!
//! ```text
//! expr := term ('*' term)*
//! term := atom ('^' n)*
//! atom := set | 'rev' '(' expr ')' | '(' expr ')'
//! ```

use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ambient::{GroupElement, GroupSignature};
use crate::monoid::MonoidSpec;
use crate::powmon::{Cursor, FinSubset1, ParseError, PowmonError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Set { position: usize, elements: Vec<GroupElement> },
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Rev { position: usize, inner: Box<Expr> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("at position {position}: {source}")]
    Invalid { position: usize, source: PowmonError },
}

pub fn parse_expr(sig: &GroupSignature, text: &str) -> Result<Expr, ParseError> {
    let mut cursor = Cursor::new(text);
    let expr = product(&mut cursor, sig)?;
    if !cursor.at_end() {
        return Err(cursor.error("unexpected input"));
    }
    Ok(expr)
}

fn product(c: &mut Cursor, sig: &GroupSignature) -> Result<Expr, ParseError> {
    let mut left = power(c, sig)?;
    while c.eat(b'*') {
        let right = power(c, sig)?;
        left = Expr::Product(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn power(c: &mut Cursor, sig: &GroupSignature) -> Result<Expr, ParseError> {
    let mut base = atom(c, sig)?;
    while c.eat(b'^') {
        c.skip_ws();
        let at = c.pos();
        let n = c.integer()?;
        let n = n.to_u32().ok_or_else(|| ParseError::new(at, "exponent must be a non-negative 32-bit integer"))?;
        base = Expr::Power(Box::new(base), n);
    }
    Ok(base)
}

fn atom(c: &mut Cursor, sig: &GroupSignature) -> Result<Expr, ParseError> {
    let position = {
        c.skip_ws();
        c.pos()
    };
    match c.peek() {
        Some(b'{') => Ok(Expr::Set { position, elements: c.set(sig)? }),
        Some(b'(') => {
            c.expect(b'(')?;
            let inner = product(c, sig)?;
            c.expect(b')')?;
            Ok(inner)
        }
        _ if c.eat_keyword("rev") => {
            c.expect(b'(')?;
            let inner = product(c, sig)?;
            c.expect(b')')?;
            Ok(Expr::Rev { position, inner: Box::new(inner) })
        }
        None => Err(c.error("unexpected end of expression")),
        Some(_) => Err(c.error("expected a set literal, 'rev(' or '('")),
    }
}

impl Expr {
    pub fn eval(&self, monoid: &Arc<MonoidSpec>) -> Result<FinSubset1, EvalError> {
        match self {
            Expr::Set { position, elements } => FinSubset1::new(monoid.clone(), elements.iter().cloned())
                .map_err(|source| EvalError::Invalid { position: *position, source }),
            Expr::Product(a, b) => Ok(a.eval(monoid)?.product_unchecked(&b.eval(monoid)?)),
            Expr::Power(a, n) => Ok(a.eval(monoid)?.power(*n)),
            Expr::Rev { position, inner } => inner
                .eval(monoid)?
                .reversion()
                .map_err(|source| EvalError::Invalid { position: *position, source }),
        }
    }
}

/// Parses and evaluates `text` over `monoid`.
pub fn evaluate(monoid: &Arc<MonoidSpec>, text: &str) -> Result<FinSubset1, EvalError> {
    parse_expr(monoid.signature(), text)?.eval(monoid)
}
