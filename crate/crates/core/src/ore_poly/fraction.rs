use std::fmt;

use super::OrePoly;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::text;

/// An element P⁻¹Q of the skew field K(T;σ).
///
/// [`OreFraction::new`] cancels the greatest common left factor when σ is
/// an automorphism and scales P to be monic. Without σ⁻¹ the pair is kept
/// as given (up to the monic scaling) and [`OreFraction::is_reduced`]
/// reports whether it is known to be in lowest terms. Equality is equality
/// in K(T;σ) whatever the representation.
#[derive(Clone, Debug)]
pub struct OreFraction<F: Field> {
    den: OrePoly<F>,
    num: OrePoly<F>,
    reduced: bool,
}

impl<F: Field> OreFraction<F> {
    /// den⁻¹·num, reduced when possible and with monic denominator.
    pub fn new(den: OrePoly<F>, num: OrePoly<F>) -> Result<Self> {
        let f = den.field().clone();
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(Self::zero(&f));
        }
        let (den, num, reduced) = if den.degree() == Some(0) {
            (den, num, true)
        } else if f.sigma_invertible() {
            let (g, _, _) = OrePoly::left_gcd(&den, &num)?;
            if g.is_one() {
                (den, num, true)
            } else {
                (den.left_divmod(&g)?.0, num.left_divmod(&g)?.0, true)
            }
        } else {
            (den, num, false)
        };
        let c = f.inv(den.leading().unwrap()).unwrap();
        Ok(Self {
            den: den.scale_left(&c),
            num: num.scale_left(&c),
            reduced,
        })
    }

    /// den⁻¹·num exactly as given, without normalization.
    pub fn from_parts(den: OrePoly<F>, num: OrePoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let reduced = den.degree() == Some(0) || num.is_zero() && den.is_one();
        Ok(Self { den, num, reduced })
    }

    /// A pair already known to be left co-prime.
    pub(crate) fn from_reduced_parts(den: OrePoly<F>, num: OrePoly<F>) -> Self {
        debug_assert!(!den.is_zero());
        Self {
            den,
            num,
            reduced: true,
        }
    }

    pub fn from_poly(p: OrePoly<F>) -> Self {
        let f = p.field().clone();
        Self::from_reduced_parts(OrePoly::one(&f), p)
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_poly(OrePoly::constant(field, c))
    }

    pub fn zero(field: &F) -> Self {
        Self::from_poly(OrePoly::zero(field))
    }

    pub fn one(field: &F) -> Self {
        Self::from_poly(OrePoly::one(field))
    }

    pub fn field(&self) -> &F {
        self.den.field()
    }

    /// P in P⁻¹Q.
    pub fn denominator(&self) -> &OrePoly<F> {
        &self.den
    }

    /// Q in P⁻¹Q.
    pub fn numerator(&self) -> &OrePoly<F> {
        &self.num
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// deg Q − deg P, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let q = self.num.degree()? as i64;
        Some(q - self.den.degree().unwrap() as i64)
    }

    /// The polynomial this fraction equals, if any.
    pub fn as_poly(&self) -> Option<OrePoly<F>> {
        if self.den.degree() == Some(0) {
            let c = self.field().inv(&self.den.coeffs()[0]).unwrap();
            return Some(self.num.scale_left(&c));
        }
        if self.num.is_zero() {
            return Some(self.num.clone());
        }
        // P⁻¹Q is a polynomial S iff Q = P·S
        let (s, r) = self.num.left_divmod(&self.den).ok()?;
        r.is_zero().then_some(s)
    }

    /// The same fraction scaled on the left so that P(0) = 1.
    pub fn with_unit_constant(&self) -> Result<Self> {
        let p0 = self.den.coeff(0);
        let c = self.field().inv(&p0).ok_or(Error::NotASeries)?;
        Ok(Self {
            den: self.den.scale_left(&c),
            num: self.num.scale_left(&c),
            reduced: self.reduced,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        // U·P1 = V·P2, then P1⁻¹Q1 + P2⁻¹Q2 = (U·P1)⁻¹(U·Q1 + V·Q2)
        let (u, v) = OrePoly::ore_swap(&self.den, &other.den)?;
        let num = u.mul(&self.num).add(&v.mul(&other.num));
        Self::new(u.mul(&self.den), num)
    }

    pub fn neg(&self) -> Self {
        Self {
            den: self.den.clone(),
            num: self.num.neg(),
            reduced: self.reduced,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        // Q1·P2⁻¹ = P′⁻¹Q′ with P′Q1 = Q′P2
        let (p1, q1) = OrePoly::ore_swap(&self.num, &other.den)?;
        Self::new(p1.mul(&self.den), q1.mul(&other.num))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Self::new(self.num.clone(), self.den.clone())
    }

    /// Parses `(P)^-1*(Q)` or a bare polynomial. The pair is kept as
    /// written.
    pub fn parse(field: &F, input: &str) -> Result<Self> {
        let s = input.trim();
        if s.starts_with('(') {
            if let Some(close) = text::matching_paren(s) {
                let rest: String = s[close + 1..].chars().filter(|c| !c.is_whitespace()).collect();
                if let Some(num) = rest.strip_prefix("^-1*") {
                    let den = OrePoly::parse(field, &s[1..close])?;
                    let num = OrePoly::parse(field, num)?;
                    return Self::from_parts(den, num);
                }
            }
        }
        Ok(Self::from_poly(OrePoly::parse(field, s)?))
    }
}

impl<F: Field> PartialEq for OreFraction<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        // U·P1 = V·P2; then equal iff U·Q1 = V·Q2
        let (u, v) = OrePoly::ore_swap(&self.den, &other.den).expect("nonzero denominators");
        u.mul(&self.num) == v.mul(&other.num)
    }
}

impl<F: Field> fmt::Display for OreFraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^-1*({})", self.den, self.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{GaloisField, Rationals};

    fn gf4() -> GaloisField {
        GaloisField::new(2, 2, 1).unwrap()
    }

    fn fr(f: &GaloisField, s: &str) -> OreFraction<GaloisField> {
        OreFraction::parse(f, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf4();
        let tinv = fr(&f, "(T)^-1*(1)");
        assert_eq!(tinv.mul(&tinv).unwrap(), fr(&f, "(T^2)^-1*(1)"));
        let x = fr(&f, "(1+a*T)^-1*(T+a)");
        assert!(x.add(&x.neg()).unwrap().is_zero());
        let prod = fr(&f, "(1+a*T)^-1*(1)").mul(&fr(&f, "1+a*T")).unwrap();
        assert_eq!(prod, OreFraction::one(&f));
        assert_eq!(prod.denominator(), &OrePoly::one(&f));
        assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), OreFraction::one(&f));
        assert_eq!(OreFraction::zero(&f).inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn degrees() {
        let f = gf4();
        assert_eq!(fr(&f, "(1+a*T)^-1*(1)").degree(), Some(-1));
        assert_eq!(fr(&f, "(T)^-1*(T^3)").degree(), Some(2));
        assert_eq!(OreFraction::zero(&f).degree(), None);
    }

    #[test]
    fn reduction_cancels_left_factors() {
        let f = gf4();
        let x = fr(&f, "((1+a*T)*(1+a*T))^-1*(1+a*T)");
        assert!(!x.is_reduced());
        let y = OreFraction::new(x.denominator().clone(), x.numerator().clone()).unwrap();
        assert!(y.is_reduced());
        assert_eq!(y.denominator().degree(), Some(1));
        assert_eq!(x, y);
        assert_eq!(y.with_unit_constant().unwrap(), fr(&f, "(1+a*T)^-1*(1)"));
    }

    #[test]
    fn display_round_trip() {
        let q = Rationals;
        let x = OreFraction::parse(&q, "(1 - T)^-1*(1)").unwrap();
        assert_eq!(x.to_string(), "(1 - T)^-1*(1)");
        assert_eq!(OreFraction::parse(&q, &x.to_string()).unwrap().to_string(), x.to_string());
        assert_eq!(OreFraction::parse(&q, "T").unwrap().to_string(), "(1)^-1*(T)");
    }
}
