//! The twisted polynomial ring K[T;σ] with Ta = σ(a)T, and its skew field
//! of left fractions ([`OreFraction`]).

mod fraction;

use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg;
use crate::text::{self, Evaluator};

pub use fraction::OreFraction;

/// Which reciprocal to take, see [`OrePoly::reciprocal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A twisted polynomial Σ aᵢTⁱ, stored densely low to high without trailing
/// zeros.
#[derive(Clone, Debug)]
pub struct OrePoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for OrePoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for OrePoly<F> {}

impl<F: Field> OrePoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// c·Tⁿ.
    pub fn monomial(field: &F, c: F::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// The variable T.
    pub fn t(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of Tⁱ (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The twisted product: coefficient n is Σ_{i+j=n} aᵢσⁱ(bⱼ).
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let tw = f.sigma_pow(b, i as i64).expect("non-negative σ power");
                out[i + j] = f.add(&out[i + j], &f.mul(a, &tw));
            }
        }
        Self::new(f, out)
    }

    /// c·self: coefficients c·aᵢ.
    pub fn scale_left(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(c, a)).collect())
    }

    /// self·c: coefficients aᵢσⁱ(c).
    pub fn scale_right(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| f.mul(a, &f.sigma_pow(c, i as i64).expect("non-negative σ power")))
            .collect();
        Self::new(f, coeffs)
    }

    /// Tⁿ·self.
    pub fn shift_up(&self, n: usize) -> Self {
        Self::monomial(&self.field, self.field.one(), n).mul(self)
    }

    /// Right Euclidean division: `self = q·d + r` with deg r < deg d. Works
    /// for any endomorphism.
    pub fn right_divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let m = d.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lc = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(m)];
        while let Some(n) = rem.degree().filter(|&n| n >= m) {
            let k = n - m;
            let c = f
                .div(rem.leading().unwrap(), &f.sigma_pow(lc, k as i64)?)
                .unwrap();
            rem = rem.sub(&Self::monomial(f, c.clone(), k).mul(d));
            quot[k] = c;
        }
        Ok((Self::new(f, quot), rem))
    }

    /// Left Euclidean division: `self = d·q + r` with deg r < deg d. Needs
    /// σ to be an automorphism.
    pub fn left_divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let m = d.degree().ok_or(Error::DivisionByZeroPoly)?;
        if !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let lc = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(m)];
        while let Some(n) = rem.degree().filter(|&n| n >= m) {
            let k = n - m;
            let c = f.sigma_pow(&f.div(rem.leading().unwrap(), lc).unwrap(), -(m as i64))?;
            rem = rem.sub(&d.mul(&Self::monomial(f, c.clone(), k)));
            quot[k] = c;
        }
        Ok((Self::new(f, quot), rem))
    }

    /// Greatest common left divisor by the extended Euclidean algorithm with
    /// left division. Returns monic `g` with `g = p·u + q·v`; `g` generates
    /// the right ideal pK[T;σ] + qK[T;σ] and left-divides both inputs.
    pub fn left_gcd(p: &Self, q: &Self) -> Result<(Self, Self, Self)> {
        let f = &p.field;
        if p.is_zero() && q.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (p.clone(), q.clone());
        let (mut u0, mut u1) = (Self::one(f), Self::zero(f));
        let (mut v0, mut v1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (s, r2) = r0.left_divmod(&r1)?;
            let u2 = u0.sub(&u1.mul(&s));
            let v2 = v0.sub(&v1.mul(&s));
            (r0, r1) = (r1, r2);
            (u0, u1) = (u1, u2);
            (v0, v1) = (v1, v2);
        }
        // g·c is monic for c = σ^{-d}(lc⁻¹)
        let d = r0.degree().unwrap() as i64;
        let c = f.sigma_pow(&f.inv(r0.leading().unwrap()).unwrap(), -d)?;
        Ok((r0.scale_right(&c), u0.scale_right(&c), v0.scale_right(&c)))
    }

    /// Twisted reciprocals of a polynomial of degree m:
    /// left Q_* = Σ σⁱ(a_{m−i})Tⁱ, right Q* = Σ σ^{i−m}(a_{m−i})Tⁱ.
    pub fn reciprocal(&self, side: Side) -> Result<Self> {
        let f = &self.field;
        let m = self.degree().ok_or(Error::DivisionByZeroPoly)?;
        if side == Side::Right && m > 0 && !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let coeffs = (0..=m)
            .map(|i| {
                let e = match side {
                    Side::Left => i as i64,
                    Side::Right => i as i64 - m as i64,
                };
                f.sigma_pow(&self.coeffs[m - i], e)
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(f, coeffs))
    }

    /// Left scalar multiple with leading coefficient 1.
    pub fn monic_left(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale_left(&self.field.inv(lc).unwrap()),
        }
    }

    /// Minimal-degree `(u, v)` with `u·a = v·b` and `u` monic (the left Ore
    /// condition), found by a linear solve in the unknown coefficients.
    /// Needs `b ≠ 0`; for `a = 0` the answer is `(1, 0)`.
    pub fn ore_swap(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let f = &a.field;
        let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
        let Some(da) = a.degree() else {
            return Ok((Self::one(f), Self::zero(f)));
        };
        for d in 0..=db {
            let Some(e) = (d + da).checked_sub(db) else {
                continue;
            };
            // unknowns x_0..x_d (of u) then y_0..y_e (of v); rows n = 0..d+da
            let cols = d + 1 + e + 1;
            let mut rows = linalg::zeros(f, d + da + 1, cols);
            for i in 0..=d {
                for (j, aj) in a.coeffs.iter().enumerate() {
                    rows[i + j][i] = f.sigma_pow(aj, i as i64)?;
                }
            }
            for i in 0..=e {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    rows[i + j][d + 1 + i] = f.neg(&f.sigma_pow(bj, i as i64)?);
                }
            }
            let Some(sol) = linalg::nullspace(f, &rows, cols).into_iter().next() else {
                continue;
            };
            let u = Self::new(f, sol[..=d].to_vec());
            let v = Self::new(f, sol[d + 1..].to_vec());
            let inv = f.inv(u.leading().expect("u ≠ 0 since v·b ≠ 0")).unwrap();
            let (u, v) = (u.scale_left(&inv), v.scale_left(&inv));
            debug_assert_eq!(u.mul(a), v.mul(b));
            return Ok((u, v));
        }
        unreachable!("left Ore condition holds with deg u ≤ deg b")
    }

    /// Parses the infix syntax with `T` the twisted variable, e.g.
    /// `1 + a*T + (a+1)*T^2`. Products are taken in the written order.
    pub fn parse(field: &F, text: &str) -> Result<Self> {
        PolyEval(field).eval(&text::parse_expr(text)?)
    }
}

impl<F: Field> fmt::Display for OrePoly<F> {
    /// Low degree first, e.g. `1 + a*T + (a+1)*T^2`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        if self.is_zero() {
            return out.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let s = f.format_elem(c);
            let (negative, body) = match s.strip_prefix('-') {
                Some(rest) if text::is_atomic(&s) => (true, rest.to_string()),
                _ => (false, s),
            };
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            let term = if i == 0 {
                body
            } else if body == "1" {
                mono
            } else if text::is_atomic(&body) {
                format!("{body}*{mono}")
            } else {
                format!("({body})*{mono}")
            };
            match (first, negative) {
                (true, true) => write!(out, "-{term}")?,
                (true, false) => write!(out, "{term}")?,
                (false, true) => write!(out, " - {term}")?,
                (false, false) => write!(out, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

struct PolyEval<'a, F>(&'a F);

impl<F: Field> Evaluator for PolyEval<'_, F> {
    type Value = OrePoly<F>;

    fn int(&self, n: &BigInt) -> Result<OrePoly<F>> {
        Ok(OrePoly::constant(self.0, self.0.from_int(n)))
    }

    fn ident(&self, name: &str) -> Result<OrePoly<F>> {
        if name == "T" {
            return Ok(OrePoly::t(self.0));
        }
        self.0
            .named_constant(name)
            .map(|c| OrePoly::constant(self.0, c))
            .ok_or_else(|| Error::Parse(format!("unknown name `{name}` in {}", self.0.spec())))
    }

    fn add(&self, a: OrePoly<F>, b: OrePoly<F>) -> Result<OrePoly<F>> {
        Ok(a.add(&b))
    }

    fn sub(&self, a: OrePoly<F>, b: OrePoly<F>) -> Result<OrePoly<F>> {
        Ok(a.sub(&b))
    }

    fn neg(&self, a: OrePoly<F>) -> Result<OrePoly<F>> {
        Ok(a.neg())
    }

    fn mul(&self, a: OrePoly<F>, b: OrePoly<F>) -> Result<OrePoly<F>> {
        Ok(a.mul(&b))
    }

    fn div(&self, a: OrePoly<F>, b: OrePoly<F>) -> Result<OrePoly<F>> {
        match b.degree() {
            Some(0) => Ok(a.mul(&OrePoly::constant(self.0, self.0.inv(&b.coeffs[0]).unwrap()))),
            _ => Err(Error::Parse(
                "only division by nonzero constants is allowed in a polynomial".into(),
            )),
        }
    }

    fn pow(&self, a: OrePoly<F>, n: i64) -> Result<OrePoly<F>> {
        if n < 0 {
            return Err(Error::Parse("negative power of a polynomial".into()));
        }
        let mut acc = OrePoly::one(self.0);
        for _ in 0..n {
            acc = acc.mul(&a);
        }
        Ok(acc)
    }
}
