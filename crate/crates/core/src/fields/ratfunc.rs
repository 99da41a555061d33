use num::BigInt;
use rand::Rng;

use super::upoly::{self, Poly};
use super::Field;
use crate::error::{Error, Result};

/// Image of the variable under σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution<E> {
    /// t ↦ u·t + v with u ≠ 0; an automorphism.
    Affine { u: E, v: E },
    /// t ↦ tᵐ with m ≥ 2; injective but not surjective.
    Power(u64),
}

/// A rational function num/den in canonical form: coprime, monic
/// denominator, zero stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc<E> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E> RatFunc<E> {
    pub fn numerator(&self) -> &[E] {
        &self.num
    }

    pub fn denominator(&self) -> &[E] {
        &self.den
    }
}

/// B(t) over a base field B with σ acting through a substitution of t and
/// trivially on B.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionField<B: Field> {
    base: B,
    subst: Substitution<B::Elem>,
}

impl<B: Field> RationalFunctionField<B> {
    pub fn new(base: B, subst: Substitution<B::Elem>) -> Result<Self> {
        match &subst {
            Substitution::Affine { u, .. } if base.is_zero(u) => {
                return Err(Error::InvalidSubstitution("t -> constant".into()))
            }
            Substitution::Power(m) if *m < 2 => {
                return Err(Error::InvalidSubstitution(format!("t -> t^{m}")))
            }
            _ => {}
        }
        Ok(Self { base, subst })
    }

    /// Identity σ.
    pub fn identity(base: B) -> Self {
        let subst = Substitution::Affine {
            u: base.one(),
            v: base.zero(),
        };
        Self { base, subst }
    }

    pub(crate) fn from_subst_text(base: B, text: Option<&str>) -> Result<Self> {
        let plain = Self::identity(base.clone());
        let Some(text) = text else {
            return Ok(plain);
        };
        let image = plain
            .parse_elem(text)
            .map_err(|e| Error::InvalidSubstitution(format!("`{text}`: {e}")))?;
        if !upoly::is_one(&base, &image.den) {
            return Err(Error::InvalidSubstitution(format!(
                "`{text}` is not a polynomial in t"
            )));
        }
        let num = image.num;
        let subst = match num.len() {
            2 => Substitution::Affine {
                u: num[1].clone(),
                v: num[0].clone(),
            },
            n if n > 2
                && base.is_one(&num[n - 1])
                && num[..n - 1].iter().all(|c| base.is_zero(c)) =>
            {
                Substitution::Power((n - 1) as u64)
            }
            _ => {
                return Err(Error::InvalidSubstitution(format!(
                    "`{text}` must be u*t+v with u != 0 or a monomial t^m"
                )))
            }
        };
        Self::new(base, subst)
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn substitution(&self) -> &Substitution<B::Elem> {
        &self.subst
    }

    /// Builds num/den, normalizing; panics if `den` is zero.
    pub fn fraction(&self, num: Poly<B::Elem>, den: Poly<B::Elem>) -> RatFunc<B::Elem> {
        let b = &self.base;
        let num = upoly::trim(b, num);
        let den = upoly::trim(b, den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let g = upoly::gcd(b, &num, &den);
        let (num, den) = if upoly::is_one(b, &g) {
            (num, den)
        } else {
            (upoly::divrem(b, &num, &g).0, upoly::divrem(b, &den, &g).0)
        };
        Self::monic_den(b, num, den)
    }

    fn monic_den(b: &B, num: Poly<B::Elem>, den: Poly<B::Elem>) -> RatFunc<B::Elem> {
        let lc = den.last().unwrap();
        if b.is_one(lc) {
            return RatFunc { num, den };
        }
        let inv = b.inv(lc).unwrap();
        RatFunc {
            num: upoly::scale(b, &num, &inv),
            den: upoly::scale(b, &den, &inv),
        }
    }

    fn poly(&self, num: Poly<B::Elem>) -> RatFunc<B::Elem> {
        RatFunc {
            num: upoly::trim(&self.base, num),
            den: vec![self.base.one()],
        }
    }

    /// φⁿ for φ(t) = u·t + v, as (uⁿ, v·(1 + u + … + u^{n−1})).
    fn affine_power(&self, u: &B::Elem, v: &B::Elem, n: i64) -> (B::Elem, B::Elem) {
        let b = &self.base;
        let (mut uu, mut vv) = (b.one(), b.zero());
        let (step_u, step_v) = if n >= 0 {
            (u.clone(), v.clone())
        } else {
            let ui = b.inv(u).unwrap();
            (ui.clone(), b.neg(&b.mul(v, &ui)))
        };
        // compose φ^{|n|} by repeated squaring of the affine map
        let (mut pu, mut pv) = (step_u, step_v);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                // (uu, vv) ∘ (pu, pv): t ↦ uu·(pu·t + pv) + vv
                vv = b.add(&b.mul(&uu, &pv), &vv);
                uu = b.mul(&uu, &pu);
            }
            pv = b.add(&b.mul(&pu, &pv), &pv);
            pu = b.mul(&pu, &pu);
            e >>= 1;
        }
        (uu, vv)
    }
}

impl<B: Field> Field for RationalFunctionField<B> {
    type Elem = RatFunc<B::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Vec::new(),
            den: vec![self.base.one()],
        }
    }

    fn one(&self) -> Self::Elem {
        self.poly(vec![self.base.one()])
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            let num = upoly::add(f, &a.num, &b.num);
            if upoly::is_one(f, &a.den) {
                return self.poly(num);
            }
            return self.fraction(num, a.den.clone());
        }
        let g = upoly::gcd(f, &a.den, &b.den);
        let ad = upoly::divrem(f, &a.den, &g).0;
        let bd = upoly::divrem(f, &b.den, &g).0;
        let num = upoly::add(f, &upoly::mul(f, &a.num, &bd), &upoly::mul(f, &b.num, &ad));
        let den = upoly::mul(f, &a.den, &bd);
        self.fraction(num, den)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: upoly::neg(&self.base, &a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let a_poly = upoly::is_one(f, &a.den);
        let b_poly = upoly::is_one(f, &b.den);
        if a_poly && b_poly {
            return self.poly(upoly::mul(f, &a.num, &b.num));
        }
        let (mut an, mut ad) = (a.num.clone(), a.den.clone());
        let (mut bn, mut bd) = (b.num.clone(), b.den.clone());
        if !b_poly {
            let g = upoly::gcd(f, &an, &bd);
            if !upoly::is_one(f, &g) {
                an = upoly::divrem(f, &an, &g).0;
                bd = upoly::divrem(f, &bd, &g).0;
            }
        }
        if !a_poly {
            let g = upoly::gcd(f, &bn, &ad);
            if !upoly::is_one(f, &g) {
                bn = upoly::divrem(f, &bn, &g).0;
                ad = upoly::divrem(f, &ad, &g).0;
            }
        }
        Self::monic_den(f, upoly::mul(f, &an, &bn), upoly::mul(f, &ad, &bd))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        Some(Self::monic_den(&self.base, a.den.clone(), a.num.clone()))
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.poly(vec![self.base.from_int(n)])
    }

    fn sigma_pow(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem> {
        if n == 0 || a.num.len() <= 1 && a.den.len() == 1 {
            return Ok(a.clone());
        }
        let f = &self.base;
        match &self.subst {
            Substitution::Affine { u, v } => {
                let (un, vn) = self.affine_power(u, v, n);
                let num = upoly::compose_affine(f, &a.num, &un, &vn);
                let den = upoly::compose_affine(f, &a.den, &un, &vn);
                Ok(Self::monic_den(f, num, den))
            }
            Substitution::Power(m) => {
                if n < 0 {
                    return Err(Error::NegativePowerOfNonInvertibleEndo);
                }
                let e = m
                    .checked_pow(n as u32)
                    .filter(|e| *e <= 1 << 24)
                    .ok_or_else(|| {
                        Error::PrecisionExhausted(format!("degree of σ^{n}(t) exceeds 2^24"))
                    })? as usize;
                Ok(RatFunc {
                    num: upoly::compose_power(f, &a.num, e),
                    den: upoly::compose_power(f, &a.den, e),
                })
            }
        }
    }

    fn sigma_invertible(&self) -> bool {
        matches!(self.subst, Substitution::Affine { .. })
    }

    fn sigma_is_identity(&self) -> bool {
        match &self.subst {
            Substitution::Affine { u, v } => self.base.is_one(u) && self.base.is_zero(v),
            Substitution::Power(_) => false,
        }
    }

    fn named_constant(&self, name: &str) -> Option<Self::Elem> {
        (name == "t").then(|| self.poly(vec![self.base.zero(), self.base.one()]))
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        let f = &self.base;
        let num = upoly::format(f, &a.num, "t");
        if upoly::is_one(f, &a.den) {
            return num;
        }
        let den = upoly::format(f, &a.den, "t");
        let compound = |s: &str| s.chars().skip(1).any(|c| matches!(c, '+' | '-'));
        let num = if compound(&num) { format!("({num})") } else { num };
        let den = if compound(&den) || den.contains(['*', '/']) {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let f = &self.base;
        let num = vec![f.random_elem(rng), f.random_elem(rng)];
        let den = if rng.gen_bool(0.5) {
            vec![f.one()]
        } else {
            vec![f.random_elem(rng), f.one()]
        };
        self.fraction(num, den)
    }

    fn spec(&self) -> String {
        let base = self.base.spec();
        if self.sigma_is_identity() {
            return format!("{base}(t)");
        }
        let image = match &self.subst {
            Substitution::Affine { u, v } => {
                upoly::format(&self.base, &[v.clone(), u.clone()], "t")
            }
            Substitution::Power(m) => format!("t^{m}"),
        };
        format!("{base}(t)[t->{image}]")
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}
