//! Rationality tests, recurrence guessing and the canonical invariants of a
//! rational series: minimal polynomial, rank, minimal fractions and
//! regularity.

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix};
use crate::linrep::{rep_from_recurrence, LinRep, DEFAULT_GUARD};
use crate::ore_poly::{OreFraction, OrePoly, Side};
use crate::tseries::{expand_fraction, recurrence_extend, Recurrence, RecurrenceKind, TwistedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational,
    UnknownAtPrecision,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Rational => "rational",
            Verdict::UnknownAtPrecision => "unknown-at-precision",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RationalityReport<F: Field> {
    pub verdict: Verdict,
    /// Certified denominator recurrence and its fraction, present exactly
    /// when the verdict is rational.
    pub witness: Option<(Recurrence<F>, OreFraction<F>)>,
    /// (m, det D_m) for m = 0..=m_max.
    pub determinants: Vec<(usize, F::Elem)>,
}

/// The (m+1)×(m+1) matrix with entry (u, v) = σ^{m−v}(a_{u+v}).
pub fn kronecker_matrix<F: Field>(f: &TwistedSeries<F>, m: usize) -> Result<Matrix<F::Elem>> {
    if f.precision() < 2 * m + 1 {
        return Err(Error::PrecisionExhausted(format!(
            "D_{} needs {} coefficients, have {}",
            m,
            2 * m + 1,
            f.precision()
        )));
    }
    let k = f.field();
    (0..=m)
        .map(|u| {
            (0..=m)
                .map(|v| k.sigma_pow(&f.coeffs()[u + v], (m - v) as i64))
                .collect()
        })
        .collect()
}

pub fn kronecker_determinant<F: Field>(f: &TwistedSeries<F>, m: usize) -> Result<F::Elem> {
    Ok(linalg::det(f.field(), &kronecker_matrix(f, m)?))
}

/// Evaluates det D_m for m ≤ m_max. The verdict is rational when the
/// determinants vanish from some m₀ on through m_max and a denominator
/// recurrence is then guessed and certified.
pub fn kronecker_test<F: Field>(f: &TwistedSeries<F>, m_max: usize) -> Result<RationalityReport<F>> {
    let k = f.field();
    let determinants = (0..=m_max)
        .map(|m| Ok((m, kronecker_determinant(f, m)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = RationalityReport {
        verdict: Verdict::UnknownAtPrecision,
        witness: None,
        determinants,
    };
    if !k.is_zero(&report.determinants[m_max].1) || f.precision() < DEFAULT_GUARD {
        return Ok(report);
    }
    let max_order = m_max.min((f.precision() - DEFAULT_GUARD) / 2);
    match guess_left_denominator(f, max_order) {
        Ok(w) => {
            report.verdict = Verdict::Rational;
            report.witness = Some(w);
        }
        Err(Error::NoRecurrenceFound(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}

pub fn guess_left_denominator<F: Field>(
    f: &TwistedSeries<F>,
    max_order: usize,
) -> Result<(Recurrence<F>, OreFraction<F>)> {
    guess_left_denominator_with_guard(f, max_order, DEFAULT_GUARD)
}

/// Finds the least p ≤ max_order, and for it the least start n₀ ≤
/// max_order + 1, such that aₙ + Σ_{i=1}^{p} cᵢσⁱ(a_{n−i}) = 0 for every
/// available n ≥ n₀, using at least p + guard equations. Returns the
/// recurrence together with P⁻¹Q, P = 1 + ΣcᵢTⁱ and Q the part of P·f
/// below n₀, after checking that P⁻¹Q expands to f.
pub fn guess_left_denominator_with_guard<F: Field>(
    f: &TwistedSeries<F>,
    max_order: usize,
    guard: usize,
) -> Result<(Recurrence<F>, OreFraction<F>)> {
    let k = f.field();
    let n = f.precision();
    if n < 2 * max_order + guard {
        return Err(Error::PrecisionExhausted(format!(
            "guessing up to order {} needs {} coefficients, have {}",
            max_order,
            2 * max_order + guard,
            n
        )));
    }
    let a = f.coeffs();
    // σⁱ(aⱼ) for i ≤ max_order, shared by every candidate system
    let mut twisted: Vec<Vec<F::Elem>> = vec![a.to_vec()];
    for i in 1..=max_order {
        let prev = &twisted[i - 1];
        twisted.push(prev.iter().map(|x| k.sigma(x)).collect());
    }
    for p in 0..=max_order {
        for n0 in p..=max_order + 1 {
            if n < n0 + p + guard {
                break;
            }
            let rows: Matrix<F::Elem> = (n0..n)
                .map(|m| (1..=p).map(|i| twisted[i][m - i].clone()).collect())
                .collect();
            let rhs: Vec<F::Elem> = (n0..n).map(|m| k.neg(&a[m])).collect();
            let Some(c) = linalg::solve(k, &rows, &rhs, p) else {
                continue;
            };
            let mut pc = vec![k.one()];
            pc.extend(c.iter().cloned());
            let den = OrePoly::new(k, pc.clone());
            let num = OrePoly::new(
                k,
                (0..n0)
                    .map(|m| {
                        let mut acc = k.zero();
                        for (i, ci) in pc.iter().enumerate().take(m + 1) {
                            acc = k.add(&acc, &k.mul(ci, &twisted[i][m - i]));
                        }
                        acc
                    })
                    .collect(),
            );
            let x = if k.sigma_invertible() {
                OreFraction::new(den, num)?.with_unit_constant()?
            } else {
                OreFraction::from_parts(den, num)?
            };
            if expand_fraction(&x, n)? != *f {
                return Err(Error::CertificationFailed(
                    "guessed fraction does not reproduce the series".into(),
                ));
            }
            return Ok((Recurrence::denominator(k, c, n0), x));
        }
    }
    Err(Error::NoRecurrenceFound(max_order))
}

/// Solves a_{r+j} = Σ_{i<r} a_{i+j}σʲ(cᵢ) on every available j, linearized
/// as σ^{−j}(a_{r+j}) = Σᵢ σ^{−j}(a_{i+j})cᵢ.
fn solve_syntactic<F: Field>(a: &[Vec<F::Elem>], k: &F, r: usize) -> Option<Vec<F::Elem>> {
    let rows: Matrix<F::Elem> = (0..a.len() - r).map(|j| a[j][j..j + r].to_vec()).collect();
    let rhs: Vec<F::Elem> = (0..a.len() - r).map(|j| a[j][j + r].clone()).collect();
    linalg::solve(k, &rows, &rhs, r)
}

/// Row j holds σ^{−j}(a₀), …, σ^{−j}(a_{n−1}).
fn untwisted_rows<F: Field>(f: &TwistedSeries<F>) -> Result<Vec<Vec<F::Elem>>> {
    let k = f.field();
    let n = f.precision();
    let mut rows = vec![f.coeffs().to_vec()];
    for _ in 1..n {
        let prev = rows.last().unwrap();
        rows.push(prev.iter().map(|x| k.sigma_pow(x, -1)).collect::<Result<_>>()?);
    }
    Ok(rows)
}

/// The least-order syntactic recurrence holding on the available data,
/// searching r = 0..=max_order with at least r + 1 equations each.
pub fn guess_syntactic<F: Field>(f: &TwistedSeries<F>, max_order: usize) -> Result<Option<Recurrence<F>>> {
    let k = f.field();
    if !k.sigma_invertible() {
        return Err(Error::RequiresAutomorphism);
    }
    let rows = untwisted_rows(f)?;
    let n = f.precision();
    for r in 0..=max_order {
        if n < 2 * r + 1 {
            break;
        }
        if let Some(c) = solve_syntactic(&rows, k, r) {
            return Ok(Some(Recurrence::syntactic(k, c)));
        }
    }
    Ok(None)
}

/// x reduced, with P(0) = 1, or NotASeries.
fn series_fraction<F: Field>(x: &OreFraction<F>) -> Result<OreFraction<F>> {
    let y = OreFraction::new(x.denominator().clone(), x.numerator().clone())?;
    y.with_unit_constant()
}

/// Whether f·R* is a polynomial of degree < deg R, which holds exactly
/// when R annihilates f.
pub fn certifies_minimal_polynomial<F: Field>(x: &OreFraction<F>, r: &OrePoly<F>) -> Result<bool> {
    let Some(deg) = r.degree() else {
        return Ok(false);
    };
    let rstar = OreFraction::from_poly(r.reciprocal(Side::Right)?);
    Ok(match x.mul(&rstar)?.as_poly() {
        Some(s) => s.degree().is_none_or(|d| d < deg),
        None => false,
    })
}

/// The monic generator R of the left ideal of polynomials annihilating
/// the series of x.
pub fn minimal_polynomial<F: Field>(x: &OreFraction<F>) -> Result<OrePoly<F>> {
    let k = x.field();
    if !k.sigma_invertible() {
        return Err(Error::RequiresAutomorphism);
    }
    if x.is_zero() {
        return Ok(OrePoly::one(k));
    }
    let x = series_fraction(x)?;
    let bound = x.denominator().degree().unwrap().max(x.numerator().degree().unwrap() + 1);
    let mut n = 2 * bound + DEFAULT_GUARD;
    let cap = 16 * (bound + DEFAULT_GUARD);
    while n <= cap {
        let rows = untwisted_rows(&expand_fraction(&x, n)?)?;
        for r in 0..=(n - 1) / 2 {
            if let Some(c) = solve_syntactic(&rows, k, r) {
                let poly = Recurrence::syntactic(k, c).polynomial();
                if certifies_minimal_polynomial(&x, &poly)? {
                    return Ok(poly);
                }
                // consistent but not an annihilator: the data is too short
                break;
            }
        }
        n *= 2;
    }
    Err(Error::CertificationFailed(
        "no certified minimal polynomial within the search cap".into(),
    ))
}

pub fn rank<F: Field>(x: &OreFraction<F>) -> Result<usize> {
    let poly = minimal_polynomial(x)?;
    let r = poly.degree().unwrap();
    let (p, q) = right_fraction_from(x, &poly)?;
    let bound = q.degree().unwrap().max(p.degree().map_or(0, |d| d + 1));
    if bound != r {
        return Err(Error::CertificationFailed(format!(
            "degree of the minimal polynomial {} differs from max(deg Q, deg P + 1) = {}",
            r, bound
        )));
    }
    Ok(r)
}

/// The reduced P⁻¹Q with P(0) = 1. Without σ⁻¹ the fraction is recovered
/// by guessing on enough coefficients and checked by exact equality.
pub fn minimal_left_fraction<F: Field>(x: &OreFraction<F>) -> Result<OreFraction<F>> {
    let k = x.field();
    if x.is_zero() {
        return Ok(OreFraction::zero(k));
    }
    if k.sigma_invertible() || x.denominator().degree() == Some(0) {
        return series_fraction(x);
    }
    let bound = x.denominator().degree().unwrap().max(x.numerator().degree().unwrap() + 1);
    let f = expand_fraction(x, 2 * bound + DEFAULT_GUARD)?;
    let (_, y) = guess_left_denominator(&f, bound)?;
    if y != *x {
        return Err(Error::CertificationFailed(
            "guessed fraction differs from the input".into(),
        ));
    }
    Ok(OreFraction::from_reduced_parts(
        y.denominator().clone(),
        y.numerator().clone(),
    ))
}

fn right_fraction_from<F: Field>(x: &OreFraction<F>, r: &OrePoly<F>) -> Result<(OrePoly<F>, OrePoly<F>)> {
    let q = r.reciprocal(Side::Right)?;
    let p = x
        .mul(&OreFraction::from_poly(q.clone()))?
        .as_poly()
        .ok_or_else(|| Error::CertificationFailed("f·R* is not a polynomial".into()))?;
    Ok((p, q))
}

/// The reduced P·Q⁻¹ with Q(0) = 1, as (P, Q) = (f·R*, R*).
pub fn minimal_right_fraction<F: Field>(x: &OreFraction<F>) -> Result<(OrePoly<F>, OrePoly<F>)> {
    right_fraction_from(x, &minimal_polynomial(x)?)
}

/// max(0, deg P − deg Q + 1) for a right fraction P·Q⁻¹.
pub fn shift_exponent<F: Field>(p: &OrePoly<F>, q: &OrePoly<F>) -> usize {
    match p.degree() {
        Some(dp) => (dp + 1).saturating_sub(q.degree().unwrap()),
        None => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub negative_degree: bool,
    pub minimal_polynomial_unit_constant: bool,
    pub invertible_matrix: bool,
}

/// Regularity through its three characterizations, which must agree.
pub fn is_regular<F: Field>(x: &OreFraction<F>) -> Result<Regularity> {
    let k = x.field();
    if !k.sigma_invertible() {
        return Err(Error::RequiresAutomorphism);
    }
    let negative_degree = x.degree().is_none_or(|d| d < 0);
    let r = minimal_polynomial(x)?;
    let unit_constant = !k.is_zero(&r.coeff(0));
    let rep = fraction_to_rep(x)?;
    let invertible = linalg::inverse(k, rep.a()).is_some();
    if negative_degree != unit_constant || unit_constant != invertible {
        return Err(Error::CharacterizationMismatch(format!(
            "degree < 0: {negative_degree}, R(0) != 0: {unit_constant}, A invertible: {invertible}"
        )));
    }
    Ok(Regularity {
        regular: negative_degree,
        negative_degree,
        minimal_polynomial_unit_constant: unit_constant,
        invertible_matrix: invertible,
    })
}

#[derive(Clone, Debug)]
pub struct CanonicalData<F: Field> {
    pub minimal_polynomial: OrePoly<F>,
    pub rank: usize,
    pub left_fraction: OreFraction<F>,
    /// (P, Q) with the series equal to P·Q⁻¹.
    pub right_fraction: (OrePoly<F>, OrePoly<F>),
    pub regular: bool,
    pub k: usize,
}

pub fn canonical_data<F: Field>(x: &OreFraction<F>) -> Result<CanonicalData<F>> {
    let minimal_polynomial = minimal_polynomial(x)?;
    let right_fraction = right_fraction_from(x, &minimal_polynomial)?;
    let k = shift_exponent(&right_fraction.0, &right_fraction.1);
    Ok(CanonicalData {
        rank: rank(x)?,
        left_fraction: minimal_left_fraction(x)?,
        regular: is_regular(x)?.regular,
        minimal_polynomial,
        right_fraction,
        k,
    })
}

/// One of the three interchangeable descriptions of a rational series.
#[derive(Clone, Debug)]
pub enum RationalForm<F: Field> {
    Fraction(OreFraction<F>),
    Rep(LinRep<F>),
    /// A recurrence with its seed coefficients.
    Rec(Recurrence<F>, Vec<F::Elem>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Fraction,
    Rep,
    Rec,
}

impl<F: Field> RationalForm<F> {
    pub fn kind(&self) -> FormKind {
        match self {
            RationalForm::Fraction(_) => FormKind::Fraction,
            RationalForm::Rep(_) => FormKind::Rep,
            RationalForm::Rec(..) => FormKind::Rec,
        }
    }

    /// Length of the prefix used to certify a conversion.
    fn check_len(&self) -> usize {
        let dim = match self {
            RationalForm::Fraction(x) => {
                x.denominator().degree().unwrap() + x.numerator().degree().map_or(0, |d| d + 1)
            }
            RationalForm::Rep(r) => r.dim(),
            RationalForm::Rec(rec, seed) => rec.seed_len().max(seed.len()),
        };
        2 * dim + 1
    }

    pub fn expand(&self, n: usize) -> Result<TwistedSeries<F>> {
        match self {
            RationalForm::Fraction(x) => expand_fraction(x, n),
            RationalForm::Rep(r) => r.expand(n),
            RationalForm::Rec(rec, seed) => recurrence_extend(rec, seed, n),
        }
    }
}

/// The companion representation of the minimal polynomial. Without an
/// automorphism, the denominator-form realization of the minimal left
/// fraction, which need not be minimal.
pub fn fraction_to_rep<F: Field>(x: &OreFraction<F>) -> Result<LinRep<F>> {
    if !x.field().sigma_invertible() {
        return LinRep::from_fraction(&minimal_left_fraction(x)?);
    }
    let (rec, seed) = fraction_to_syntactic(x)?;
    rep_from_recurrence(&rec, &seed)
}

fn fraction_to_syntactic<F: Field>(x: &OreFraction<F>) -> Result<(Recurrence<F>, Vec<F::Elem>)> {
    let k = x.field();
    let r = minimal_polynomial(x)?;
    let order = r.degree().unwrap();
    let c = (0..order).map(|i| k.neg(&r.coeff(i))).collect();
    let seed = expand_fraction(x, order.max(1))?.coeffs().to_vec();
    Ok((Recurrence::syntactic(k, c), seed))
}

/// A syntactic recurrence from the minimal polynomial when σ is an
/// automorphism, otherwise the denominator recurrence of the minimal left
/// fraction.
pub fn fraction_to_recurrence<F: Field>(x: &OreFraction<F>) -> Result<(Recurrence<F>, Vec<F::Elem>)> {
    let k = x.field();
    if k.sigma_invertible() {
        return fraction_to_syntactic(x);
    }
    let y = minimal_left_fraction(x)?;
    let c = y.denominator().coeffs()[1..].to_vec();
    let n0 = y.numerator().degree().map_or(0, |d| d + 1);
    let rec = Recurrence::denominator(k, c, n0);
    let seed = expand_fraction(&y, rec.seed_len().max(1))?.coeffs().to_vec();
    Ok((rec, seed))
}

pub fn recurrence_to_fraction<F: Field>(rec: &Recurrence<F>, seed: &[F::Elem]) -> Result<OreFraction<F>> {
    let k = rec.field();
    match rec.kind() {
        RecurrenceKind::Syntactic => rep_from_recurrence(rec, seed)?.to_fraction(),
        RecurrenceKind::Denominator { n0 } => {
            let p = rec.polynomial();
            let len = seed.len().max(n0).max(rec.seed_len()).max(1);
            let a = recurrence_extend(rec, seed, len)?;
            let num = (0..len)
                .map(|m| {
                    let mut acc = k.zero();
                    for (i, ci) in p.coeffs().iter().enumerate().take(m + 1) {
                        acc = k.add(&acc, &k.mul(ci, &k.sigma_pow(&a.coeffs()[m - i], i as i64)?));
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?;
            OreFraction::new(p, OrePoly::new(k, num))?.with_unit_constant()
        }
    }
}

/// Converts between fractions, representations and recurrences; every
/// result is checked against the input on a prefix of 2·dim + 1
/// coefficients.
pub fn convert<F: Field>(x: &RationalForm<F>, to: FormKind) -> Result<RationalForm<F>> {
    if x.kind() == to {
        return Ok(x.clone());
    }
    let out = match (x, to) {
        (RationalForm::Fraction(f), FormKind::Rep) => RationalForm::Rep(fraction_to_rep(f)?),
        (RationalForm::Fraction(f), FormKind::Rec) => {
            let (rec, seed) = fraction_to_recurrence(f)?;
            RationalForm::Rec(rec, seed)
        }
        (RationalForm::Rep(r), FormKind::Fraction) => RationalForm::Fraction(r.to_fraction()?),
        (RationalForm::Rep(r), FormKind::Rec) => {
            let (rec, seed) = fraction_to_recurrence(&r.to_fraction()?)?;
            RationalForm::Rec(rec, seed)
        }
        (RationalForm::Rec(rec, seed), FormKind::Fraction) => {
            RationalForm::Fraction(recurrence_to_fraction(rec, seed)?)
        }
        (RationalForm::Rec(rec, seed), FormKind::Rep) => match rec.kind() {
            RecurrenceKind::Syntactic => RationalForm::Rep(rep_from_recurrence(rec, seed)?),
            RecurrenceKind::Denominator { .. } => {
                RationalForm::Rep(fraction_to_rep(&recurrence_to_fraction(rec, seed)?)?)
            }
        },
        _ => unreachable!(),
    };
    let n = x.check_len().max(out.check_len());
    if !x.expand(n)?.agrees_with(&out.expand(n)?).0 {
        return Err(Error::CertificationFailed(
            "converted form expands differently".into(),
        ));
    }
    Ok(out)
}
