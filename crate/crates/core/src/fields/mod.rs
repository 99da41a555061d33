//! Coefficient fields equipped with an injective endomorphism σ.
//!
//! Every concrete field implements [`Field`]; the endomorphism is part of the
//! field object, so `Field::sigma_pow` is the only way to twist a
//! coefficient. [`FieldCtx`] is the runtime-selected union of the shipped
//! fields, built from a textual specification by [`make_context`].

mod binary;
mod galois;
mod prime;
mod rationals;
mod ratfunc;
pub(crate) mod upoly;

use std::fmt;

use num::BigInt;
use rand::Rng;

pub use binary::{BinRat, BinaryFunctionField, BinarySubst};
pub use galois::GaloisField;
pub use prime::PrimeField;
pub use rationals::Rationals;
pub use ratfunc::{RationalFunctionField, RatFunc, Substitution};

use crate::error::{Error, Result};

/// A commutative field `K` together with a fixed injective endomorphism σ.
///
/// Elements are stored in a canonical form, so `==` on [`Field::Elem`] is
/// field equality.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// σⁿ(a). Negative `n` needs σ to be an automorphism.
    fn sigma_pow(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem>;
    fn sigma_invertible(&self) -> bool;
    fn sigma_is_identity(&self) -> bool;

    /// Named constants accepted by the element parser (the generator `a` of
    /// a finite field, the variable `t` of a function field).
    fn named_constant(&self, name: &str) -> Option<Self::Elem>;
    /// Text form of an element; always accepted back by the parser.
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Canonical field specification string, see [`make_context`].
    fn spec(&self) -> String;
    /// Characteristic, 0 for fields containing ℚ.
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    /// σ(a); always defined.
    fn sigma(&self, a: &Self::Elem) -> Self::Elem {
        self.sigma_pow(a, 1)
            .expect("non-negative powers of σ are always defined")
    }

    fn parse_elem(&self, text: &str) -> Result<Self::Elem> {
        crate::text::parse_field_elem(self, text)
    }
}

/// σⁿ(x) with the endomorphism of `field`; σ⁰ is the identity.
pub fn apply_endo<F: Field>(field: &F, x: &F::Elem, n: i64) -> Result<F::Elem> {
    if n < 0 && !field.sigma_invertible() {
        return Err(Error::NegativePowerOfNonInvertibleEndo);
    }
    field.sigma_pow(x, n)
}

/// Runtime choice among the shipped coefficient fields.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldCtx {
    Rationals(Rationals),
    Prime(PrimeField),
    Galois(GaloisField),
    RationalFunctionsQ(RationalFunctionField<Rationals>),
    RationalFunctionsP(RationalFunctionField<PrimeField>),
    /// GF(2)(t), bit-packed.
    Binary(BinaryFunctionField),
}

/// Runs `$body` with `$f` bound to the concrete field inside a [`FieldCtx`].
#[macro_export]
macro_rules! with_field {
    ($ctx:expr, $f:ident => $body:expr) => {
        match $ctx {
            $crate::fields::FieldCtx::Rationals($f) => $body,
            $crate::fields::FieldCtx::Prime($f) => $body,
            $crate::fields::FieldCtx::Galois($f) => $body,
            $crate::fields::FieldCtx::RationalFunctionsQ($f) => $body,
            $crate::fields::FieldCtx::RationalFunctionsP($f) => $body,
            $crate::fields::FieldCtx::Binary($f) => $body,
        }
    };
}

impl FieldCtx {
    pub fn spec(&self) -> String {
        with_field!(self, f => f.spec())
    }

    pub fn sigma_invertible(&self) -> bool {
        with_field!(self, f => f.sigma_invertible())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl std::str::FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_context(s)
    }
}

/// Builds a field context from its specification.
///
/// Grammar (whitespace is ignored):
///
/// ```text
/// QQ | QQ(t) | QQ(t)[t->EXPR]
/// GF(p) | GF(q) | GF(q)[x^N] | GF(p)(t) | GF(p)(t)[t->EXPR]
/// ```
///
/// `q = pᵏ` may be written as a number or as `p^k`; `[x^N]` selects the
/// Frobenius power x ↦ x^N with N a power of p. `EXPR` is an affine image
/// `u*t+v` (u ≠ 0, e.g. `t+1`, `2*t`) or a monomial `t^N` with N ≥ 2.
pub fn make_context(spec: &str) -> Result<FieldCtx> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = s.strip_prefix("QQ") {
        if rest.is_empty() {
            return Ok(FieldCtx::Rationals(Rationals));
        }
        let subst = parse_function_field_suffix(rest, spec)?;
        return RationalFunctionField::from_subst_text(Rationals, subst.as_deref())
            .map(FieldCtx::RationalFunctionsQ);
    }
    let rest = s
        .strip_prefix("GF(")
        .ok_or_else(|| Error::Parse(format!("unrecognized field specification `{spec}`")))?;
    let close = rest
        .find(')')
        .ok_or_else(|| Error::Parse(format!("missing `)` in `{spec}`")))?;
    let (p, k) = parse_prime_power(&rest[..close])?;
    let tail = &rest[close + 1..];

    if tail.starts_with("(t)") {
        if k != 1 {
            return Err(Error::UnsupportedField(format!(
                "function fields are only shipped over prime fields, got `{spec}`"
            )));
        }
        let subst = parse_function_field_suffix(tail, spec)?;
        if p == 2 {
            return BinaryFunctionField::from_subst_text(subst.as_deref()).map(FieldCtx::Binary);
        }
        return RationalFunctionField::from_subst_text(PrimeField::new(p)?, subst.as_deref())
            .map(FieldCtx::RationalFunctionsP);
    }

    let frob_power = if tail.is_empty() {
        1
    } else {
        let inner = tail
            .strip_prefix("[x^")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[x^N]` in `{spec}`")))?;
        inner
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad Frobenius exponent `{inner}`")))?
    };
    let e = frobenius_exponent(p, k, frob_power)?;
    if k == 1 {
        Ok(FieldCtx::Prime(PrimeField::new(p)?))
    } else {
        GaloisField::new(p, k, e).map(FieldCtx::Galois)
    }
}

fn parse_function_field_suffix(rest: &str, spec: &str) -> Result<Option<String>> {
    let after = rest
        .strip_prefix("(t)")
        .ok_or_else(|| Error::Parse(format!("expected `(t)` in `{spec}`")))?;
    if after.is_empty() {
        return Ok(None);
    }
    let inner = after
        .strip_prefix("[t->")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[t->EXPR]` in `{spec}`")))?;
    Ok(Some(inner.to_string()))
}

fn parse_prime_power(text: &str) -> Result<(u64, u32)> {
    let bad = || Error::Parse(format!("bad field order `{text}`"));
    let (p, k) = match text.split_once('^') {
        Some((p, k)) => (
            p.parse::<u64>().map_err(|_| bad())?,
            k.parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q = text.parse::<u64>().map_err(|_| bad())?;
            let p = smallest_prime_factor(q).ok_or_else(bad)?;
            let mut k = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            if r != 1 {
                return Err(Error::UnsupportedField(format!("{q} is not a prime power")));
            }
            (p, k)
        }
    };
    if k == 0 || !is_prime(p) {
        return Err(Error::UnsupportedField(format!("{text} is not a prime power")));
    }
    Ok((p, k))
}

fn frobenius_exponent(p: u64, k: u32, power: u64) -> Result<u32> {
    let mut e = 0;
    let mut acc = 1u64;
    while acc < power {
        acc = acc.saturating_mul(p);
        e += 1;
    }
    if acc != power {
        return Err(Error::InvalidSubstitution(format!(
            "x^{power} is not a Frobenius power over characteristic {p}"
        )));
    }
    Ok(e % k)
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

pub(crate) fn is_prime(n: u64) -> bool {
    smallest_prime_factor(n) == Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shipped_specs() {
        let gf4 = make_context("GF(4)[x^2]").unwrap();
        assert!(matches!(&gf4, FieldCtx::Galois(g) if g.order() == 4));
        assert!(gf4.sigma_invertible());
        assert_eq!(gf4.spec(), "GF(4)[x^2]");

        assert_eq!(make_context("QQ").unwrap(), FieldCtx::Rationals(Rationals));

        let shift = make_context("GF(5)(t)[t->t+1]").unwrap();
        assert!(matches!(shift, FieldCtx::RationalFunctionsP(_)));
        assert!(shift.sigma_invertible());
        assert_eq!(shift.spec(), "GF(5)(t)[t->t+1]");

        let frob = make_context("GF(2)(t)[t->t^2]").unwrap();
        assert!(matches!(frob, FieldCtx::Binary(_)));
        assert!(!frob.sigma_invertible());
        assert_eq!(frob.spec(), "GF(2)(t)[t->t^2]");

        let dil = make_context("QQ(t)[t->2*t]").unwrap();
        assert!(dil.sigma_invertible());
        assert_eq!(dil.spec(), "QQ(t)[t->2*t]");
        assert_eq!(make_context("GF(2^3)[x^4]").unwrap().spec(), "GF(8)[x^4]");
        assert_eq!(make_context("GF(7)").unwrap().spec(), "GF(7)");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(make_context("GF(6)"), Err(Error::UnsupportedField(_))));
        assert!(matches!(make_context("RR"), Err(Error::Parse(_))));
        assert!(matches!(make_context("GF(4)[x^3]"), Err(Error::InvalidSubstitution(_))));
        assert!(matches!(
            make_context("QQ(t)[t->0*t]"),
            Err(Error::InvalidSubstitution(_))
        ));
        assert!(matches!(
            make_context("QQ(t)[t->t^2+1]"),
            Err(Error::InvalidSubstitution(_))
        ));
        assert!(matches!(make_context("GF(4)(t)"), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn apply_endo_on_gf4() {
        let FieldCtx::Galois(f) = make_context("GF(4)[x^2]").unwrap() else {
            unreachable!()
        };
        let a = f.named_constant("a").unwrap();
        let a1 = f.add(&a, &f.one());
        assert_eq!(apply_endo(&f, &a, 1).unwrap(), a1);
        assert_eq!(apply_endo(&f, &a, 0).unwrap(), a);
        // σ² = id on F₄, so σ⁻¹ = σ.
        assert_eq!(apply_endo(&f, &a, -1).unwrap(), a1);
    }

    #[test]
    fn negative_power_needs_automorphism() {
        let FieldCtx::Binary(f) = make_context("GF(2)(t)[t->t^2]").unwrap() else {
            unreachable!()
        };
        let t = f.named_constant("t").unwrap();
        assert_eq!(
            apply_endo(&f, &t, -1),
            Err(Error::NegativePowerOfNonInvertibleEndo)
        );
        assert_eq!(f.format_elem(&apply_endo(&f, &t, 3).unwrap()), "t^8");
    }
}
