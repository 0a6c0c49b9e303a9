//! Recursive-descent parser for problem-file expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' ['-'] integer)?
//! primary := number | 't' | 'r' | func '(' expr ')' | delta '(' 't' ')'
//!          | '(' expr [',' expr] ')'
//! ```
//!
//! Values are polynomials in `r` whose coefficients are exponential
//! polynomials in `t`; a parenthesized pair is a fuzzy quantity.

use std::fmt;

use crate::timefun::{Osc, SmoothTerm, TimeExpr};

type E = TimeExpr<f64>;

/// Error at a character offset of the parsed text.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl ExprError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at offset {})", self.message, self.offset)
    }
}

impl std::error::Error for ExprError {}

/// `Σ coeffs[k]·r^k`, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq)]
pub struct RPoly(Vec<E>);

impl RPoly {
    fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(E::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    fn time(e: E) -> Self {
        Self::new(vec![e])
    }

    fn r() -> Self {
        Self::new(vec![E::zero(), E::constant(1.0)])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.0
    }

    /// Highest power of `r`; zero for `r`-free values.
    pub fn r_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// The `r^k` coefficient.
    pub fn coeff(&self, k: usize) -> E {
        self.0.get(k).cloned().unwrap_or_default()
    }

    /// The value as a plain number, if it is one.
    pub fn as_number(&self) -> Option<f64> {
        match self.0.as_slice() {
            [] => Some(0.0),
            [c] => c.as_constant(),
            _ => None,
        }
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    fn scale(&self, c: f64) -> Self {
        Self::new(self.0.iter().map(|e| e.scale(c)).collect())
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        if self.0.is_empty() || other.0.is_empty() {
            return Some(Self::new(Vec::new()));
        }
        let mut out = vec![E::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b).ok()?);
            }
        }
        Some(Self::new(out))
    }
}

/// A parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(RPoly),
    Pair(RPoly, RPoly),
}

impl Value {
    fn map(self, f: impl Fn(RPoly) -> RPoly) -> Self {
        match self {
            Value::Scalar(a) => Value::Scalar(f(a)),
            Value::Pair(a, b) => Value::Pair(f(a), f(b)),
        }
    }

    fn combine(
        self,
        other: Self,
        f: impl Fn(&RPoly, &RPoly) -> Option<RPoly>,
    ) -> Result<Self, &'static str> {
        let fail = "product not representable as an exponential polynomial";
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(f(&a, &b).ok_or(fail)?),
            (Value::Pair(a, b), Value::Scalar(c)) => {
                Value::Pair(f(&a, &c).ok_or(fail)?, f(&b, &c).ok_or(fail)?)
            }
            (Value::Scalar(c), Value::Pair(a, b)) => {
                Value::Pair(f(&c, &a).ok_or(fail)?, f(&c, &b).ok_or(fail)?)
            }
            (Value::Pair(a, b), Value::Pair(c, d)) => {
                Value::Pair(f(&a, &c).ok_or(fail)?, f(&b, &d).ok_or(fail)?)
            }
        })
    }
}

/// Parses a whole expression.
pub fn parse_value(text: &str) -> Result<Value, ExprError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(ExprError::new(
            p.pos,
            format!("unexpected '{}'", p.chars[p.pos]),
        ));
    }
    Ok(v)
}

/// Parses an `r`-free scalar expression into a [`TimeExpr`].
pub fn parse_time_expr(text: &str) -> Result<E, ExprError> {
    match parse_value(text)? {
        Value::Scalar(p) if p.r_degree() == 0 => Ok(p.coeff(0)),
        Value::Scalar(_) => Err(ExprError::new(0, "expression may not depend on r")),
        Value::Pair(..) => Err(ExprError::new(
            0,
            "expected a crisp expression, found a pair",
        )),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("'{f}'"));
            Err(ExprError::new(
                self.pos,
                format!("expected '{c}', found {found}"),
            ))
        }
    }

    fn expr(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            let sign = if self.eat('+') {
                1.0
            } else if self.eat('-') {
                -1.0
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?.map(|p| p.scale(sign));
            acc = acc
                .combine(rhs, |a, b| Some(a.add(b)))
                .map_err(|m| ExprError::new(at, m))?;
        }
    }

    fn term(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc
                    .combine(rhs, RPoly::mul)
                    .map_err(|m| ExprError::new(at, m))?;
            } else if self.eat('/') {
                self.skip_ws();
                let start = self.pos;
                let c = match self.unary()? {
                    Value::Scalar(p) => p.as_number(),
                    Value::Pair(..) => None,
                };
                match c {
                    Some(c) if c != 0.0 => acc = acc.map(|p| p.scale(1.0 / c)),
                    Some(_) => return Err(ExprError::new(start, "division by zero")),
                    None => {
                        return Err(ExprError::new(
                            start,
                            "only division by a number is supported",
                        ))
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        if self.eat('-') {
            Ok(self.unary()?.map(|p| p.scale(-1.0)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let num_at = self.pos;
        let n = self.number()?;
        if n.fract() != 0.0 || n > 64.0 {
            return Err(ExprError::new(
                num_at,
                "exponent must be an integer between -64 and 64",
            ));
        }
        let n = n as i32;
        let p = match base {
            Value::Scalar(p) => p,
            Value::Pair(..) => {
                return Err(ExprError::new(at, "a pair cannot be raised to a power"))
            }
        };
        if negative {
            return match p.as_number() {
                Some(c) if c != 0.0 => Ok(Value::Scalar(RPoly::time(E::constant(c.powi(-n))))),
                _ => Err(ExprError::new(
                    start,
                    "negative exponents need a nonzero number base",
                )),
            };
        }
        let mut acc = RPoly::time(E::constant(1.0));
        for _ in 0..n {
            acc = acc
                .mul(&p)
                .ok_or_else(|| ExprError::new(at, "power not representable"))?;
        }
        Ok(Value::Scalar(acc))
    }

    fn number(&mut self) -> Result<f64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.chars.get(p.pos).is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        let mut any = digits(self);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            any |= digits(self);
        }
        if !any {
            self.pos = start;
            return Err(ExprError::new(start, "expected a number"));
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if !digits(self) {
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| ExprError::new(start, format!("invalid number '{text}'")))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn primary(&mut self) -> Result<Value, ExprError> {
        let Some(c) = self.peek() else {
            return Err(ExprError::new(self.pos, "unexpected end of input"));
        };
        let start = self.pos;
        if c.is_ascii_digit() || c == '.' {
            return Ok(Value::Scalar(RPoly::time(E::constant(self.number()?))));
        }
        if c == '(' {
            self.pos += 1;
            let first = self.expr()?;
            if self.eat(',') {
                let second = self.expr()?;
                self.expect(')')?;
                return match (first, second) {
                    (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Pair(a, b)),
                    _ => Err(ExprError::new(start, "pairs cannot be nested")),
                };
            }
            self.expect(')')?;
            return Ok(first);
        }
        if !c.is_ascii_alphabetic() {
            return Err(ExprError::new(start, format!("unexpected '{c}'")));
        }
        let name = self.ident();
        match name.as_str() {
            "t" => Ok(Value::Scalar(RPoly::time(E::term(1.0, 1, 0.0, Osc::None)))),
            "r" => Ok(Value::Scalar(RPoly::r())),
            "exp" | "sin" | "cos" | "sinh" | "cosh" => {
                self.expect('(')?;
                let arg_at = self.pos;
                let arg = self.expr()?;
                self.expect(')')?;
                let (a, b) = affine_in_t(&arg).ok_or_else(|| {
                    ExprError::new(arg_at, format!("argument of {name} must be a + b*t"))
                })?;
                Ok(Value::Scalar(RPoly::time(elementary(&name, a, b))))
            }
            _ => match delta_order(&name) {
                Some(order) => {
                    self.expect('(')?;
                    let arg_at = self.pos;
                    if self.peek() != Some('t') || self.ident() != "t" {
                        return Err(ExprError::new(
                            arg_at,
                            format!("{name} takes the argument t"),
                        ));
                    }
                    self.expect(')')?;
                    Ok(Value::Scalar(RPoly::time(E::delta(1.0, order))))
                }
                None => Err(ExprError::new(
                    start,
                    format!("unknown identifier '{name}'"),
                )),
            },
        }
    }
}

fn delta_order(name: &str) -> Option<u32> {
    let rest = name.strip_prefix("delta")?;
    if rest.is_empty() {
        Some(0)
    } else if rest.chars().all(|c| c.is_ascii_digit()) {
        rest.parse().ok()
    } else {
        None
    }
}

/// `(a, b)` when the value is `a + b·t`.
fn affine_in_t(v: &Value) -> Option<(f64, f64)> {
    let Value::Scalar(p) = v else { return None };
    if p.r_degree() > 0 {
        return None;
    }
    let e = p.coeff(0);
    if e.has_deltas() {
        return None;
    }
    let (mut a, mut b) = (0.0, 0.0);
    for s in e.smooth_terms() {
        match (s.power, s.rate, s.osc) {
            (0, 0.0, Osc::None) => a += s.coeff,
            (1, 0.0, Osc::None) => b += s.coeff,
            _ => return None,
        }
    }
    Some((a, b))
}

/// `name(a + b·t)` as an exponential polynomial.
fn elementary(name: &str, a: f64, b: f64) -> E {
    let smooth = match name {
        "exp" => vec![SmoothTerm::new(a.exp(), 0, b, Osc::None)],
        "sinh" => vec![
            SmoothTerm::new(0.5 * a.exp(), 0, b, Osc::None),
            SmoothTerm::new(-0.5 * (-a).exp(), 0, -b, Osc::None),
        ],
        "cosh" => vec![
            SmoothTerm::new(0.5 * a.exp(), 0, b, Osc::None),
            SmoothTerm::new(0.5 * (-a).exp(), 0, -b, Osc::None),
        ],
        // sin(a + bt) = sin a cos bt + cos a sin bt
        "sin" => vec![
            SmoothTerm::new(a.sin(), 0, 0.0, Osc::Cos(b)),
            SmoothTerm::new(a.cos(), 0, 0.0, Osc::Sin(b)),
        ],
        _ => vec![
            SmoothTerm::new(a.cos(), 0, 0.0, Osc::Cos(b)),
            SmoothTerm::new(-a.sin(), 0, 0.0, Osc::Sin(b)),
        ],
    };
    E::new(smooth, Vec::new())
}
