//! Infix expression syntax shared by field elements, twisted polynomials,
//! fractions and series literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? digits)?
//! atom  := digits | identifier | '(' expr ')'
//! ```
//!
//! Products are evaluated left to right without reordering, which matters
//! for twisted polynomials where `T*a` and `a*T` differ.

use num::BigInt;

use crate::error::{Error, Result};
use crate::fields::Field;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push(Token::Int(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            out.push(Token::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn peek_sym(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.source))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek_sym() == Some('-');
        if negative {
            self.pos += 1;
        }
        let Some(Token::Int(n)) = self.tokens.get(self.pos).cloned() else {
            return Err(self.error("expected integer exponent"));
        };
        self.pos += 1;
        let n: i64 = n.try_into().map_err(|_| self.error("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a number, a name or `(`")),
        }
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        source: text,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Interpretation of [`Expr`] trees in some algebra.
pub(crate) trait Evaluator {
    type Value;

    fn int(&self, n: &BigInt) -> Result<Self::Value>;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, n: i64) -> Result<Self::Value>;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        match e {
            Expr::Int(n) => self.int(n),
            Expr::Ident(s) => self.ident(s),
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                self.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(a, b)
            }
            Expr::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.div(a, b)
            }
            Expr::Pow(a, n) => {
                let a = self.eval(a)?;
                self.pow(a, *n)
            }
        }
    }
}

struct FieldEval<'a, F>(&'a F);

impl<F: Field> Evaluator for FieldEval<'_, F> {
    type Value = F::Elem;

    fn int(&self, n: &BigInt) -> Result<F::Elem> {
        Ok(self.0.from_int(n))
    }

    fn ident(&self, name: &str) -> Result<F::Elem> {
        self.0
            .named_constant(name)
            .ok_or_else(|| Error::Parse(format!("unknown name `{name}` in {}", self.0.spec())))
    }

    fn add(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(self.0.add(&a, &b))
    }

    fn sub(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(self.0.sub(&a, &b))
    }

    fn neg(&self, a: F::Elem) -> Result<F::Elem> {
        Ok(self.0.neg(&a))
    }

    fn mul(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        Ok(self.0.mul(&a, &b))
    }

    fn div(&self, a: F::Elem, b: F::Elem) -> Result<F::Elem> {
        self.0
            .div(&a, &b)
            .ok_or_else(|| Error::Parse("division by zero".into()))
    }

    fn pow(&self, a: F::Elem, n: i64) -> Result<F::Elem> {
        let base = if n < 0 {
            self.0
                .inv(&a)
                .ok_or_else(|| Error::Parse("negative power of zero".into()))?
        } else {
            a
        };
        let mut acc = self.0.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.0.mul(&acc, &base);
        }
        Ok(acc)
    }
}

/// Parses a field element written with the field's named constants.
pub fn parse_field_elem<F: Field>(field: &F, text: &str) -> Result<F::Elem> {
    FieldEval(field).eval(&parse_expr(text)?)
}

/// Splits `text` at top-level commas (outside parentheses and brackets).
pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Index of the parenthesis closing the one at byte 0 of `text`.
pub(crate) fn matching_paren(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Whether a printed element can be used as a left factor `s*T` without
/// parentheses.
pub(crate) fn is_atomic(s: &str) -> bool {
    !s.chars().skip(1).any(|c| matches!(c, '+' | '-'))
}
