//! Truncated twisted power series Σ aₙTⁿ with Ta = σ(a)T, and the two
//! linear recurrence forms used to describe rational ones.
//!
//! A series stores its known prefix a₀..a_{N−1}; N is its precision. Every
//! operation documents the precision of its result and fails with
//! [`Error::PrecisionExhausted`] instead of inventing coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::ore_poly::{OreFraction, OrePoly};
use crate::text;

#[derive(Clone, Debug)]
pub struct TwistedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for TwistedSeries<F> {
    /// Same precision and same coefficients. Use
    /// [`TwistedSeries::agrees_with`] to compare up to a common precision.
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> TwistedSeries<F> {
    /// The series with the given known prefix; panics on an empty prefix.
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F, precision: usize) -> Self {
        Self::new(field, vec![field.zero(); precision])
    }

    pub fn one(field: &F, precision: usize) -> Self {
        Self::from_poly(&OrePoly::one(field), precision)
    }

    /// The geometric series (1 − T)⁻¹ = Σ Tⁿ, unit of the Hadamard product.
    pub fn ones(field: &F, precision: usize) -> Self {
        Self::new(field, vec![field.one(); precision])
    }

    pub fn from_poly(p: &OrePoly<F>, precision: usize) -> Self {
        let f = p.field();
        Self::new(f, (0..precision).map(|i| p.coeff(i)).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&F::Elem> {
        self.coeffs.get(n).ok_or_else(|| {
            Error::PrecisionExhausted(format!("coefficient {n} of a series known to {}", self.precision()))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision == 0 || precision > self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot truncate a series known to {} to {precision}",
                self.precision()
            )));
        }
        Ok(Self::new(&self.field, self.coeffs[..precision].to_vec()))
    }

    /// Whether both prefixes agree up to the smaller precision, together
    /// with that precision.
    pub fn agrees_with(&self, other: &Self) -> (bool, usize) {
        let n = self.precision().min(other.precision());
        (self.coeffs[..n] == other.coeffs[..n], n)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        let n = self.precision().min(other.precision());
        let coeffs = (0..n).map(|i| op(&self.coeffs[i], &other.coeffs[i])).collect();
        Self::new(&self.field, coeffs)
    }

    /// Precision is the minimum of the inputs.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.neg(a)).collect())
    }

    /// Twisted product, coefficient n is Σ_{i+j=n} aᵢσⁱ(bⱼ); precision is
    /// the minimum of the inputs.
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.precision().min(other.precision());
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let tw = f.sigma_pow(b, i as i64).expect("non-negative σ power");
                out[i + j] = f.add(&out[i + j], &f.mul(a, &tw));
            }
        }
        Self::new(f, out)
    }

    /// c·f, coefficients c·aₙ.
    pub fn scale_left(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(c, a)).collect())
    }

    /// f·c, coefficients aₙσⁿ(c).
    pub fn scale_right(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| f.mul(a, &f.sigma_pow(c, n as i64).expect("non-negative σ power")))
            .collect();
        Self::new(f, coeffs)
    }

    /// f⁻¹ to the same precision. With h = f(0)⁻¹f = 1 − g, the inverse is
    /// (Σ gⁱ)·f(0)⁻¹.
    pub fn inv(&self) -> Result<Self> {
        let f = &self.field;
        let c = f.inv(&self.coeffs[0]).ok_or(Error::NonInvertibleSeries)?;
        let one = Self::one(f, self.precision());
        let g = one.sub(&self.scale_left(&c));
        // Horner: Σ_{i<N} gⁱ = 1 + g(1 + g(1 + …))
        let mut acc = one.clone();
        for _ in 1..self.precision() {
            acc = one.add(&g.mul(&acc));
        }
        Ok(acc.scale_right(&c))
    }

    /// sⁿ(f) = Σ a_{k+n}Tᵏ; precision drops by n.
    pub fn shift(&self, n: usize) -> Result<Self> {
        if n >= self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "shift by {n} of a series known to {}",
                self.precision()
            )));
        }
        Ok(Self::new(&self.field, self.coeffs[n..].to_vec()))
    }

    /// Coefficient-wise product; precision is the minimum of the inputs.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.mul(a, b))
    }

    /// Parses `[a0, a1, ..., aN-1] @ N`; the `@ N` suffix is optional and
    /// must match the number of listed coefficients.
    pub fn parse(field: &F, input: &str) -> Result<Self> {
        let s = input.trim();
        let (list, declared) = match s.rsplit_once('@') {
            Some((l, n)) => {
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad precision in `{s}`")))?;
                (l.trim(), Some(n))
            }
            None => (s, None),
        };
        let inner = list
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[...]` in `{s}`")))?;
        if inner.trim().is_empty() {
            return Err(Error::Parse("a series needs at least one coefficient".into()));
        }
        let coeffs = text::split_top_level(inner)
            .into_iter()
            .map(|c| field.parse_elem(c))
            .collect::<Result<Vec<_>>>()?;
        if declared.is_some_and(|n| n != coeffs.len()) {
            return Err(Error::Parse(format!(
                "`{s}` lists {} coefficients but declares precision {}",
                coeffs.len(),
                declared.unwrap()
            )));
        }
        Ok(Self::new(field, coeffs))
    }
}

impl<F: Field> fmt::Display for TwistedSeries<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coeffs.iter().map(|c| self.field.format_elem(c)).collect();
        write!(out, "[{}] @ {}", items.join(", "), self.precision())
    }
}

/// P∘f, coefficient n is Σᵢ a_{n+i}σⁿ(bᵢ) for P = Σ bᵢTⁱ. Precision drops
/// by deg P.
pub fn module_action<F: Field>(p: &OrePoly<F>, f: &TwistedSeries<F>) -> Result<TwistedSeries<F>> {
    let k = &f.field;
    let Some(d) = p.degree() else {
        return Ok(TwistedSeries::zero(k, f.precision()));
    };
    if d >= f.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "action of a degree {d} polynomial on a series known to {}",
            f.precision()
        )));
    }
    let coeffs = (0..f.precision() - d)
        .map(|n| {
            let mut acc = k.zero();
            for (i, b) in p.coeffs().iter().enumerate() {
                if !k.is_zero(b) && !k.is_zero(&f.coeffs[n + i]) {
                    let tb = k.sigma_pow(b, n as i64).expect("non-negative σ power");
                    acc = k.add(&acc, &k.mul(&f.coeffs[n + i], &tb));
                }
            }
            acc
        })
        .collect();
    Ok(TwistedSeries::new(k, coeffs))
}

/// L_f(P) = (P∘f)(0) = Σ bᵢaᵢ.
pub fn functional<F: Field>(p: &OrePoly<F>, f: &TwistedSeries<F>) -> Result<F::Elem> {
    let k = &f.field;
    let mut acc = k.zero();
    for (i, b) in p.coeffs().iter().enumerate() {
        acc = k.add(&acc, &k.mul(b, f.coeff(i)?));
    }
    Ok(acc)
}

/// The series f with P·f = Q for x = P⁻¹Q, to precision n, by the
/// triangular recursion aₙ = P(0)⁻¹(Qₙ − Σ_{i≥1} Pᵢσⁱ(a_{n−i})).
pub fn expand_fraction<F: Field>(x: &OreFraction<F>, n: usize) -> Result<TwistedSeries<F>> {
    let k = x.field();
    if n == 0 {
        return Err(Error::PrecisionExhausted("expansion to precision 0".into()));
    }
    let mut x = x.clone();
    if k.is_zero(&x.denominator().coeff(0)) && !x.is_reduced() && k.sigma_invertible() {
        x = OreFraction::new(x.denominator().clone(), x.numerator().clone())?;
    }
    let (p, q) = (x.denominator(), x.numerator());
    let p0inv = k.inv(&p.coeff(0)).ok_or(Error::NotASeries)?;
    let mut a: Vec<F::Elem> = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = q.coeff(m);
        for (i, pi) in p.coeffs().iter().enumerate().skip(1).take(m) {
            if !k.is_zero(pi) && !k.is_zero(&a[m - i]) {
                acc = k.sub(&acc, &k.mul(pi, &k.sigma_pow(&a[m - i], i as i64)?));
            }
        }
        a.push(k.mul(&p0inv, &acc));
    }
    Ok(TwistedSeries::new(k, a))
}

/// The two recurrence conventions for rational series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceKind {
    /// a_{r+j} = Σ_{i<r} a_{i+j}σʲ(cᵢ) for all j ≥ 0, with c₀..c_{r−1}.
    Syntactic,
    /// aₙ + Σ_{i=1}^{p} cᵢσⁱ(a_{n−i}) = 0 for all n ≥ n₀, with c₁..c_p.
    Denominator { n0: usize },
}

#[derive(Clone, Debug)]
pub struct Recurrence<F: Field> {
    field: F,
    kind: RecurrenceKind,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Recurrence<F> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.coeffs == other.coeffs
    }
}

impl<F: Field> Recurrence<F> {
    /// Syntactic recurrence with coefficients c₀..c_{r−1}.
    pub fn syntactic(field: &F, coeffs: Vec<F::Elem>) -> Self {
        Self {
            field: field.clone(),
            kind: RecurrenceKind::Syntactic,
            coeffs,
        }
    }

    /// Denominator recurrence with coefficients c₁..c_p starting at n₀.
    pub fn denominator(field: &F, coeffs: Vec<F::Elem>, n0: usize) -> Self {
        Self {
            field: field.clone(),
            kind: RecurrenceKind::Denominator { n0 },
            coeffs,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn kind(&self) -> RecurrenceKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// c₀..c_{r−1} (syntactic) or c₁..c_p (denominator).
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Number of initial terms the recurrence does not determine.
    pub fn seed_len(&self) -> usize {
        match self.kind {
            RecurrenceKind::Syntactic => self.order(),
            RecurrenceKind::Denominator { n0 } => n0.max(self.order()),
        }
    }

    /// The denominator P = 1 + Σ cᵢTⁱ of a denominator recurrence, or the
    /// syntactic polynomial Tʳ − Σ cᵢTⁱ.
    pub fn polynomial(&self) -> OrePoly<F> {
        let f = &self.field;
        match self.kind {
            RecurrenceKind::Denominator { .. } => {
                let mut c = vec![f.one()];
                c.extend(self.coeffs.iter().cloned());
                OrePoly::new(f, c)
            }
            RecurrenceKind::Syntactic => {
                let mut c: Vec<_> = self.coeffs.iter().map(|x| f.neg(x)).collect();
                c.push(f.one());
                OrePoly::new(f, c)
            }
        }
    }
}

/// Extends `seed` to `n` coefficients with `rec`. The seed is taken as
/// given; the recurrence fills every index from `seed.len()` on.
pub fn recurrence_extend<F: Field>(
    rec: &Recurrence<F>,
    seed: &[F::Elem],
    n: usize,
) -> Result<TwistedSeries<F>> {
    let f = &rec.field;
    let needed = rec.seed_len().max(1);
    if seed.len() < needed {
        return Err(Error::InsufficientSeed {
            needed,
            got: seed.len(),
        });
    }
    if n == 0 {
        return Err(Error::PrecisionExhausted("extension to precision 0".into()));
    }
    let mut a = seed[..seed.len().min(n)].to_vec();
    let c = &rec.coeffs;
    for k in a.len()..n {
        let mut acc = f.zero();
        match rec.kind {
            RecurrenceKind::Syntactic => {
                let j = k - c.len();
                for (i, ci) in c.iter().enumerate() {
                    let term = f.mul(&a[i + j], &f.sigma_pow(ci, j as i64)?);
                    acc = f.add(&acc, &term);
                }
            }
            RecurrenceKind::Denominator { .. } => {
                for (i, ci) in c.iter().enumerate() {
                    let term = f.mul(ci, &f.sigma_pow(&a[k - i - 1], i as i64 + 1)?);
                    acc = f.sub(&acc, &term);
                }
            }
        }
        a.push(acc);
    }
    Ok(TwistedSeries::new(f, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{GaloisField, Rationals};
    use num::BigRational;

    fn gf4() -> GaloisField {
        GaloisField::new(2, 2, 1).unwrap()
    }

    fn s(f: &GaloisField, text: &str) -> TwistedSeries<GaloisField> {
        TwistedSeries::parse(f, text).unwrap()
    }

    fn alternating(f: &GaloisField, n: usize) -> TwistedSeries<GaloisField> {
        let a = f.named_constant("a").unwrap();
        TwistedSeries::new(f, (0..n).map(|i| if i % 2 == 0 { 1 } else { a }).collect())
    }

    #[test]
    fn product_examples() {
        let f = gf4();
        let x = s(&f, "[1, a, 0, 0, 0, 0, 0, 0]");
        let prod = x.mul(&alternating(&f, 8));
        assert_eq!(prod, TwistedSeries::one(&f, 8));
        let t = TwistedSeries::from_poly(&OrePoly::t(&f), 4);
        assert_eq!(t.mul(&s(&f, "[a, 0, 0, 0]")), s(&f, "[0, a+1, 0, 0]"));
        assert_eq!(x.mul(&TwistedSeries::one(&f, 8)), x);
    }

    #[test]
    fn inverse_examples() {
        let q = Rationals;
        let one_minus_t = TwistedSeries::parse(&q, "[1, -1, 0, 0, 0]").unwrap();
        assert_eq!(one_minus_t.inv().unwrap(), TwistedSeries::ones(&q, 5));
        let f = gf4();
        let x = s(&f, "[1, a, 0, 0, 0, 0, 0, 0]");
        assert_eq!(x.inv().unwrap(), alternating(&f, 8));
        assert_eq!(s(&f, "[0, 1, 0]").inv(), Err(Error::NonInvertibleSeries));
        let y = s(&f, "[a, 1, a+1, 0, a, 1]");
        assert_eq!(y.mul(&y.inv().unwrap()), TwistedSeries::one(&f, 6));
    }

    #[test]
    fn shift_examples() {
        let f = gf4();
        let x = alternating(&f, 6);
        assert_eq!(x.shift(1).unwrap().coeffs(), &alternating(&f, 6).coeffs()[1..]);
        assert_eq!(x.shift(0).unwrap(), x);
        let p = TwistedSeries::from_poly(&OrePoly::parse(&f, "1 + a*T^2").unwrap(), 6);
        assert!(p.shift(3).unwrap().is_zero());
        assert!(matches!(x.shift(6), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn action_examples() {
        let f = gf4();
        let x = s(&f, "[1, a, a+1, 0, 1, a]");
        let t = OrePoly::t(&f);
        assert_eq!(module_action(&t, &x).unwrap(), x.shift(1).unwrap());
        let a = f.named_constant("a").unwrap();
        assert_eq!(
            module_action(&OrePoly::constant(&f, a), &x).unwrap(),
            x.scale_right(&a)
        );
        let p = OrePoly::parse(&f, "T + a").unwrap();
        assert!(module_action(&p, &alternating(&f, 8)).unwrap().is_zero());
        assert_eq!(functional(&p, &x).unwrap(), f.add(&a, &a));
    }

    #[test]
    fn hadamard_examples() {
        let f = gf4();
        let x = s(&f, "[1, a, a+1, 0, 1]");
        assert_eq!(x.hadamard(&TwistedSeries::ones(&f, 5)), x);
        let alt = alternating(&f, 6);
        assert_eq!(alt.hadamard(&alt), s(&f, "[1, a+1, 1, a+1, 1, a+1]"));
        assert!(x.hadamard(&TwistedSeries::zero(&f, 5)).is_zero());
    }

    #[test]
    fn expansion_examples() {
        let f = gf4();
        let x = OreFraction::parse(&f, "(1+a*T)^-1*(1)").unwrap();
        let e = expand_fraction(&x, 6).unwrap();
        assert_eq!(e.to_string(), "[1, a, 1, a, 1, a] @ 6");
        let zero = OreFraction::parse(&f, "(1+T^2)^-1*(0)").unwrap();
        assert!(expand_fraction(&zero, 4).unwrap().is_zero());
        let q = Rationals;
        let geo = OreFraction::parse(&q, "(1-T)^-1*(1)").unwrap();
        assert_eq!(expand_fraction(&geo, 5).unwrap(), TwistedSeries::ones(&q, 5));
        let bad = OreFraction::parse(&q, "(T)^-1*(1)").unwrap();
        assert_eq!(expand_fraction(&bad, 3), Err(Error::NotASeries));
        // (T)⁻¹·T cancels to 1
        let one = OreFraction::parse(&q, "(T)^-1*(T)").unwrap();
        assert_eq!(expand_fraction(&one, 3).unwrap(), TwistedSeries::one(&q, 3));
    }

    #[test]
    fn recurrence_examples() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let rec = Recurrence::syntactic(&f, vec![a]);
        assert_eq!(recurrence_extend(&rec, &[1], 8).unwrap(), alternating(&f, 8));

        let q = Rationals;
        let one = BigRational::from_integer(1.into());
        let rec = Recurrence::denominator(&q, vec![-one.clone()], 1);
        assert_eq!(
            recurrence_extend(&rec, std::slice::from_ref(&one), 6).unwrap(),
            TwistedSeries::ones(&q, 6)
        );

        let rec = Recurrence::syntactic(&q, Vec::new());
        let c = BigRational::new(3.into(), 2.into());
        let e = recurrence_extend(&rec, std::slice::from_ref(&c), 4).unwrap();
        assert_eq!(e.to_string(), "[3/2, 0, 0, 0] @ 4");
        assert_eq!(
            recurrence_extend(&Recurrence::syntactic(&q, vec![one.clone(), one]), &[c], 4),
            Err(Error::InsufficientSeed { needed: 2, got: 1 })
        );
    }

    #[test]
    fn literal_round_trip() {
        let f = gf4();
        let x = s(&f, "[1, a, a+1, 0] @ 4");
        assert_eq!(x.to_string(), "[1, a, a+1, 0] @ 4");
        assert!(TwistedSeries::parse(&f, "[1, a] @ 3").is_err());
        assert!(TwistedSeries::parse(&f, "[]").is_err());
    }
}
