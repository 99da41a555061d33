//! σ-linear representations (X, A, Y) of dimension m, representing the
//! series with coefficients aₙ = X·Aσ(A)⋯σ^{n−1}(A)·σⁿ(Y).

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix};
use crate::ore_poly::{OreFraction, OrePoly};
use crate::rational;
use crate::tseries::{recurrence_extend, Recurrence, RecurrenceKind, TwistedSeries};

/// Extra coefficients used on top of the rank bound when a series has to be
/// re-guessed.
pub const DEFAULT_GUARD: usize = 4;

#[derive(Clone, Debug)]
pub struct LinRep<F: Field> {
    field: F,
    x: Vec<F::Elem>,
    a: Matrix<F::Elem>,
    y: Vec<F::Elem>,
}

impl<F: Field> PartialEq for LinRep<F> {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.a == other.a && self.y == other.y
    }
}

impl<F: Field> LinRep<F> {
    pub fn new(field: &F, x: Vec<F::Elem>, a: Matrix<F::Elem>, y: Vec<F::Elem>) -> Result<Self> {
        let m = x.len();
        if y.len() != m || a.len() != m || a.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "X has {} entries, Y has {}, A is {}x{}",
                m,
                y.len(),
                a.len(),
                a.first().map_or(0, Vec::len)
            )));
        }
        Ok(Self {
            field: field.clone(),
            x,
            a,
            y,
        })
    }

    /// The empty representation of the zero series.
    pub fn zero(field: &F) -> Self {
        Self {
            field: field.clone(),
            x: Vec::new(),
            a: Vec::new(),
            y: Vec::new(),
        }
    }

    /// (1, 1, 1), representing (1 − T)⁻¹ = Σ Tⁿ.
    pub fn ones(field: &F) -> Self {
        let one = field.one();
        Self::new(field, vec![one.clone()], vec![vec![one.clone()]], vec![one]).unwrap()
    }

    /// The companion representation of a syntactic recurrence of order r
    /// seeded with a₀..a_{r−1}: X = (a₀ … a_{r−1}), A has ones below the
    /// diagonal and last column (c₀ … c_{r−1}), Y = e₀.
    pub fn companion(rec: &Recurrence<F>, seed: &[F::Elem]) -> Result<Self> {
        let f = rec.field();
        if rec.kind() != RecurrenceKind::Syntactic {
            return Err(Error::DimensionMismatch(
                "the companion representation needs a syntactic recurrence".into(),
            ));
        }
        let r = rec.order();
        if seed.len() < r {
            return Err(Error::InsufficientSeed {
                needed: r,
                got: seed.len(),
            });
        }
        let mut a = linalg::zeros(f, r, r);
        for i in 1..r {
            a[i][i - 1] = f.one();
        }
        for (i, c) in rec.coeffs().iter().enumerate() {
            a[i][r - 1] = c.clone();
        }
        let mut y = vec![f.zero(); r];
        if r > 0 {
            y[0] = f.one();
        }
        Self::new(f, seed[..r].to_vec(), a, y)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[F::Elem] {
        &self.x
    }

    pub fn a(&self) -> &Matrix<F::Elem> {
        &self.a
    }

    pub fn y(&self) -> &[F::Elem] {
        &self.y
    }

    /// uₙ = Aσ(u_{n−1}) with u₀ = Y, so that aₙ = X·uₙ.
    fn step(&self, u: &[F::Elem]) -> Vec<F::Elem> {
        let su = linalg::vec_sigma(&self.field, u, 1).expect("non-negative σ power");
        linalg::mat_vec(&self.field, &self.a, &su)
    }

    pub fn coeff(&self, n: usize) -> F::Elem {
        let mut u = self.y.clone();
        for _ in 0..n {
            u = self.step(&u);
        }
        linalg::dot(&self.field, &self.x, &u)
    }

    /// The first `n` coefficients.
    pub fn expand(&self, n: usize) -> Result<TwistedSeries<F>> {
        if n == 0 {
            return Err(Error::PrecisionExhausted("expansion to precision 0".into()));
        }
        let mut u = self.y.clone();
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                u = self.step(&u);
            }
            coeffs.push(linalg::dot(&self.field, &self.x, &u));
        }
        Ok(TwistedSeries::new(&self.field, coeffs))
    }

    /// Block-diagonal sum, representing the sum of the series.
    pub fn sum(&self, other: &Self) -> Self {
        let f = &self.field;
        let (m1, m2) = (self.dim(), other.dim());
        let mut a = linalg::zeros(f, m1 + m2, m1 + m2);
        for i in 0..m1 {
            a[i][..m1].clone_from_slice(&self.a[i]);
        }
        for i in 0..m2 {
            a[m1 + i][m1..].clone_from_slice(&other.a[i]);
        }
        let x = self.x.iter().chain(&other.x).cloned().collect();
        let y = self.y.iter().chain(&other.y).cloned().collect();
        Self::new(f, x, a, y).unwrap()
    }

    /// (cX, A, Y), representing c·f.
    pub fn scale_left(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let x = self.x.iter().map(|v| f.mul(c, v)).collect();
        Self::new(f, x, self.a.clone(), self.y.clone()).unwrap()
    }

    /// (X, A, Yc), representing f·c.
    pub fn scale_right(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let y = self.y.iter().map(|v| f.mul(v, c)).collect();
        Self::new(f, self.x.clone(), self.a.clone(), y).unwrap()
    }

    /// (X⊗X′, A⊗A′, Y⊗Y′), representing the Hadamard product.
    pub fn hadamard(&self, other: &Self) -> Self {
        let f = &self.field;
        let x = linalg::kronecker(f, &vec![self.x.clone()], &vec![other.x.clone()]).remove(0);
        let a = linalg::kronecker(f, &self.a, &other.a);
        let col = |v: &[F::Elem]| v.iter().map(|e| vec![e.clone()]).collect::<Matrix<_>>();
        let y = linalg::kronecker(f, &col(&self.y), &col(&other.y))
            .into_iter()
            .map(|mut r| r.remove(0))
            .collect();
        Self::new(f, x, a, y).unwrap()
    }

    /// (XB, B⁻¹Aσ(B), B⁻¹Y) for an invertible B.
    pub fn conjugate(&self, b: &Matrix<F::Elem>) -> Result<Self> {
        let f = &self.field;
        let binv = linalg::inverse(f, b)
            .ok_or_else(|| Error::DimensionMismatch("conjugating matrix is singular".into()))?;
        let x = linalg::vec_mat(f, &self.x, b);
        let a = linalg::mat_mul(f, &linalg::mat_mul(f, &binv, &self.a), &linalg::mat_sigma(f, b, 1)?);
        let y = linalg::mat_vec(f, &binv, &self.y);
        Self::new(f, x, a, y)
    }

    /// A representation of x = P⁻¹Q for any σ, of dimension max(deg P, 1) +
    /// deg Q. The series g = P⁻¹ is realized on the states
    /// (gₙ, σ(g_{n−1}), …); the numerator is fed in as x = Σⱼ (g·Qⱼ)Tʲ
    /// through a chain of ones, which σ leaves fixed.
    pub fn from_fraction(x: &OreFraction<F>) -> Result<Self> {
        let f = x.field();
        if x.is_zero() {
            return Ok(Self::zero(f));
        }
        let x = x.with_unit_constant()?;
        let (den, num) = (x.denominator(), x.numerator());
        let p = den.degree().unwrap().max(1);
        let q = num.degree().unwrap();
        let d = p + q;
        let mut a = linalg::zeros(f, d, d);
        for i in 1..=den.degree().unwrap() {
            a[0][i - 1] = f.neg(&den.coeff(i));
        }
        for i in 1..p {
            a[i][i - 1] = f.one();
        }
        for j in 1..=q {
            // injection of g·Qⱼ at time j, triggered by the one at z_{j−1}
            a[0][p + j - 1] = num.coeff(j);
            if j > 1 {
                a[p + j - 1][p + j - 2] = f.one();
            }
        }
        let mut xv = vec![f.zero(); d];
        xv[0] = f.one();
        let mut y = vec![f.zero(); d];
        y[0] = num.coeff(0);
        if q > 0 {
            y[p] = f.one();
        }
        Self::new(f, xv, a, y)
    }

    /// Whether both representations have the same series. Exact: a series
    /// with a representation of dimension M whose first M coefficients
    /// vanish is zero, so comparing dim₁ + dim₂ coefficients decides.
    pub fn same_series(&self, other: &Self) -> Result<bool> {
        let n = (self.dim() + other.dim()).max(1);
        Ok(self.expand(n)? == other.expand(n)?)
    }

    /// X(I − AT)⁻¹Y as an exact fraction, for any σ. The fraction is
    /// guessed from a prefix of the expansion and accepted only when the
    /// representation built from it has the same series.
    pub fn to_fraction(&self) -> Result<OreFraction<F>> {
        let f = &self.field;
        let m = self.dim();
        if m == 0 {
            return Ok(OreFraction::zero(f));
        }
        let mut n = 2 * m + 2 + DEFAULT_GUARD;
        while n <= 16 * (m + 1 + DEFAULT_GUARD) {
            let series = self.expand(n)?;
            match rational::guess_left_denominator(&series, (n - DEFAULT_GUARD) / 2) {
                Ok((_, x)) => {
                    if self.same_series(&Self::from_fraction(&x)?)? {
                        return Ok(x);
                    }
                }
                Err(Error::NoRecurrenceFound(_)) => {}
                Err(e) => return Err(e),
            }
            n *= 2;
        }
        Err(Error::CertificationFailed(
            "no fraction reproduces the representation".into(),
        ))
    }

    /// X(I − AT)⁻¹Y by Schur complements on I − AT over K(T;σ): with
    /// M = [[N, X], [Y, f]] the inverse is assembled from (I − N)⁻¹ and
    /// (1 − f − Y(I − N)⁻¹X)⁻¹. Exact for any σ, but the intermediate
    /// fractions grow quickly; [`LinRep::to_fraction`] is much faster.
    pub fn to_fraction_blockwise(&self) -> Result<OreFraction<F>> {
        let f = &self.field;
        let m = self.dim();
        let inv = inv_one_minus(f, &self.a)?;
        let mut total = OreFraction::zero(f);
        for i in 0..m {
            if f.is_zero(&self.x[i]) {
                continue;
            }
            let xi = OreFraction::constant(f, self.x[i].clone());
            for k in 0..m {
                if f.is_zero(&self.y[k]) || inv[i][k].is_zero() {
                    continue;
                }
                let yk = OreFraction::constant(f, self.y[k].clone());
                total = total.add(&xi.mul(&inv[i][k])?.mul(&yk)?)?;
            }
        }
        Ok(total)
    }

    /// A reduced representation of the same series, in companion form built
    /// from the least right dependency among the shifts f, s(f), s²(f), ….
    /// Needs σ to be an automorphism.
    pub fn minimize(&self) -> Result<Self> {
        let f = &self.field;
        if !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let m = self.dim();
        let mut n = 2 * m + 1;
        for _ in 0..4 {
            let series = self.expand(n)?;
            if let Some(rec) = rational::guess_syntactic(&series, m)? {
                let out = Self::companion(&rec, series.coeffs())?;
                if self.same_series(&out)? {
                    return Ok(out);
                }
            }
            n *= 2;
        }
        Err(Error::CertificationFailed(
            "no certified reduced representation found".into(),
        ))
    }

    /// Product of the represented series, by multiplying the expansions
    /// and re-guessing; certified against the product of the fractions.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.product_with_guard(other, DEFAULT_GUARD)
    }

    pub fn product_with_guard(&self, other: &Self, guard: usize) -> Result<Self> {
        let f = &self.field;
        if !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let bound = self.dim() + other.dim();
        let n = 2 * bound + guard;
        let series = self.expand(n)?.mul(&other.expand(n)?);
        let target = self.to_fraction()?.mul(&other.to_fraction()?)?;
        Self::reguess(&series, bound, &target)
    }

    /// Inverse of the represented series (constant term X·Y ≠ 0).
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_guard(DEFAULT_GUARD)
    }

    pub fn inverse_with_guard(&self, guard: usize) -> Result<Self> {
        let f = &self.field;
        if f.is_zero(&linalg::dot(f, &self.x, &self.y)) {
            return Err(Error::NonInvertibleSeries);
        }
        if !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let bound = self.dim() + 1;
        let series = self.expand(2 * bound + guard)?.inv()?;
        let target = self.to_fraction()?.inv()?;
        Self::reguess(&series, bound, &target)
    }

    fn reguess(series: &TwistedSeries<F>, bound: usize, target: &OreFraction<F>) -> Result<Self> {
        let rec = rational::guess_syntactic(series, bound)?.ok_or(Error::GuessFailed)?;
        let out = Self::companion(&rec, series.coeffs())?;
        if out.to_fraction()? != *target {
            return Err(Error::GuessFailed);
        }
        Ok(out)
    }

    /// Coefficients of the row vector F = X(I − AT)⁻¹: Fₙ = X·Aσ(A)⋯σ^{n−1}(A).
    fn row_series(&self, n: usize) -> Result<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        let mut w = self.x.clone();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                let a = linalg::mat_sigma(f, &self.a, k as i64 - 1)?;
                w = linalg::vec_mat(f, &w, &a);
            }
            out.push(w.clone());
        }
        Ok(out)
    }

    /// Whether `other` = (XB, B⁻¹Aσ(B), B⁻¹Y) for this representation.
    pub fn is_similar_via(&self, other: &Self, b: &Matrix<F::Elem>) -> bool {
        let f = &self.field;
        let m = self.dim();
        if other.dim() != m || b.len() != m || b.iter().any(|r| r.len() != m) {
            return false;
        }
        let Some(_) = linalg::inverse(f, b) else {
            return false;
        };
        let Ok(sb) = linalg::mat_sigma(f, b, 1) else {
            return false;
        };
        // compare B·A₂ = A₁σ(B) and B·Y₂ = Y₁ to avoid the inverse
        linalg::vec_mat(f, &self.x, b) == other.x
            && linalg::mat_mul(f, b, &other.a) == linalg::mat_mul(f, &self.a, &sb)
            && linalg::mat_vec(f, b, &other.y) == self.y
    }

    /// An invertible B with X₂ = X₁B, A₂ = B⁻¹A₁σ(B), Y₂ = B⁻¹Y₁, for two
    /// reduced representations of the same series. Solves F₂ = F₁B on the
    /// row series, linearized by applying σ^{−n} to coefficient n.
    pub fn similarity_witness(&self, other: &Self) -> Result<Matrix<F::Elem>> {
        let f = &self.field;
        if !f.sigma_invertible() {
            return Err(Error::RequiresAutomorphism);
        }
        let m = self.dim();
        if other.dim() != m {
            return Err(Error::NotSimilar(format!(
                "dimensions {} and {} differ",
                m,
                other.dim()
            )));
        }
        let mut n = 2 * m + 1;
        for _ in 0..3 {
            let (f1, f2) = (self.row_series(n)?, other.row_series(n)?);
            let mut rows = Vec::with_capacity(n);
            for (k, w) in f1.iter().enumerate() {
                rows.push(linalg::vec_sigma(f, w, -(k as i64))?);
            }
            let unique = linalg::rank(f, &rows) == m;
            let mut b = linalg::zeros(f, m, m);
            for col in 0..m {
                let rhs = f2
                    .iter()
                    .enumerate()
                    .map(|(k, w)| f.sigma_pow(&w[col], -(k as i64)))
                    .collect::<Result<Vec<_>>>()?;
                let sol = linalg::solve(f, &rows, &rhs, m).ok_or_else(|| {
                    Error::NotSimilar("the row series are not related by a constant matrix".into())
                })?;
                for (i, v) in sol.into_iter().enumerate() {
                    b[i][col] = v;
                }
            }
            if self.is_similar_via(other, &b) {
                return Ok(b);
            }
            if unique {
                break;
            }
            n *= 2;
        }
        Err(Error::NotSimilar(
            "no invertible matrix satisfies the similarity equations".into(),
        ))
    }
}

/// (I − AT)⁻¹ over K(T;σ), splitting off the first row and column:
/// with α = 1 − a₀₀T, β = −A₀₂T, γ = −A₂₀T, D = (I − A₂₂T)⁻¹ and
/// S = α − βDγ, the inverse is [[S⁻¹, −S⁻¹βD], [−DγS⁻¹, D + DγS⁻¹βD]].
fn inv_one_minus<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Vec<Vec<OreFraction<F>>>> {
    let m = a.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let lin = |c: &F::Elem| OreFraction::from_poly(OrePoly::monomial(f, f.neg(c), 1));
    let sub: Matrix<F::Elem> = a[1..].iter().map(|r| r[1..].to_vec()).collect();
    let d = inv_one_minus(f, &sub)?;
    let alpha = OreFraction::from_poly(OrePoly::new(f, vec![f.one(), f.neg(&a[0][0])]));
    let beta: Vec<_> = (1..m).map(|j| lin(&a[0][j])).collect();
    let gamma: Vec<_> = (1..m).map(|i| lin(&a[i][0])).collect();

    let mut beta_d = vec![OreFraction::zero(f); m - 1];
    let mut d_gamma = vec![OreFraction::zero(f); m - 1];
    for k in 0..m - 1 {
        for j in 0..m - 1 {
            if !beta[j].is_zero() && !d[j][k].is_zero() {
                beta_d[k] = beta_d[k].add(&beta[j].mul(&d[j][k])?)?;
            }
            if !d[k][j].is_zero() && !gamma[j].is_zero() {
                d_gamma[k] = d_gamma[k].add(&d[k][j].mul(&gamma[j])?)?;
            }
        }
    }
    let mut s = alpha;
    for j in 0..m - 1 {
        if !beta_d[j].is_zero() && !gamma[j].is_zero() {
            s = s.sub(&beta_d[j].mul(&gamma[j])?)?;
        }
    }
    let s_inv = s.inv()?;

    let mut out = vec![vec![OreFraction::zero(f); m]; m];
    out[0][0] = s_inv.clone();
    let s_inv_beta_d: Vec<_> = beta_d
        .iter()
        .map(|x| s_inv.mul(x))
        .collect::<Result<_>>()?;
    for k in 0..m - 1 {
        out[0][k + 1] = s_inv_beta_d[k].neg();
        out[k + 1][0] = d_gamma[k].mul(&s_inv)?.neg();
    }
    for i in 0..m - 1 {
        for k in 0..m - 1 {
            out[i + 1][k + 1] = if d_gamma[i].is_zero() || s_inv_beta_d[k].is_zero() {
                d[i][k].clone()
            } else {
                d[i][k].add(&d_gamma[i].mul(&s_inv_beta_d[k])?)?
            };
        }
    }
    Ok(out)
}

/// The companion representation of `rec` extended from `seed`, checked
/// against the recurrence itself to 2·dim + 1 coefficients.
pub fn rep_from_recurrence<F: Field>(rec: &Recurrence<F>, seed: &[F::Elem]) -> Result<LinRep<F>> {
    let rep = LinRep::companion(rec, seed)?;
    let n = 2 * rep.dim() + 1;
    if rep.expand(n)?.agrees_with(&recurrence_extend(rec, seed, n)?).0 {
        Ok(rep)
    } else {
        Err(Error::CertificationFailed(
            "seed is inconsistent with the recurrence".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tseries::expand_fraction;
    use crate::fields::{GaloisField, Rationals};
    use num::BigRational;

    fn gf4() -> GaloisField {
        GaloisField::new(2, 2, 1).unwrap()
    }

    fn one_dim(f: &GaloisField, a: u32) -> LinRep<GaloisField> {
        LinRep::new(f, vec![1], vec![vec![a]], vec![1]).unwrap()
    }

    fn nilpotent_t<F: Field>(f: &F) -> LinRep<F> {
        let (z, o) = (f.zero(), f.one());
        LinRep::new(
            f,
            vec![o.clone(), z.clone()],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            vec![z, o],
        )
        .unwrap()
    }

    #[test]
    fn coefficients() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let r = one_dim(&f, a);
        assert_eq!(r.coeff(2), 1);
        assert_eq!(r.coeff(0), 1);
        assert_eq!(r.expand(4).unwrap().to_string(), "[1, a, 1, a] @ 4");
        let t = nilpotent_t(&f);
        assert_eq!(t.coeff(1), 1);
        assert_eq!((t.coeff(0), t.coeff(2), t.coeff(3)), (0, 0, 0));
        let z = LinRep::new(&f, vec![1], vec![vec![a]], vec![0]).unwrap();
        assert!(z.expand(5).unwrap().is_zero());
    }

    #[test]
    fn closure_constructions() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let r = one_dim(&f, a);
        let e = r.expand(6).unwrap();
        assert_eq!(r.sum(&LinRep::zero(&f)).expand(6).unwrap(), e);
        let t = nilpotent_t(&f);
        assert_eq!(r.sum(&t).expand(6).unwrap(), e.add(&t.expand(6).unwrap()));
        assert_eq!(r.scale_left(&a).expand(6).unwrap(), e.scale_left(&a));
        assert_eq!(r.scale_right(&a).expand(6).unwrap(), e.scale_right(&a));
        let h = r.hadamard(&r);
        assert_eq!(h.a(), &vec![vec![f.mul(&a, &a)]]);
        assert_eq!(h.expand(6).unwrap(), e.hadamard(&e));
        assert_eq!(r.hadamard(&LinRep::ones(&f)).expand(6).unwrap(), e);
        assert!(r.hadamard(&LinRep::zero(&f)).expand(6).unwrap().is_zero());
    }

    #[test]
    fn fractions_of_representations() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let x = one_dim(&f, a).to_fraction().unwrap();
        assert_eq!(x, OreFraction::parse(&f, "(1+a*T)^-1*(1)").unwrap());
        let t = nilpotent_t(&f).to_fraction().unwrap();
        assert_eq!(t, OreFraction::from_poly(OrePoly::t(&f)));
        assert!(LinRep::zero(&f).to_fraction().unwrap().is_zero());
        let b = vec![vec![1, a, 0], vec![0, 1, a], vec![1, 0, 1]];
        let r = one_dim(&f, a).sum(&nilpotent_t(&f)).conjugate(&b).unwrap();
        assert_eq!(r.to_fraction().unwrap(), r.to_fraction_blockwise().unwrap());
    }

    #[test]
    fn fraction_realization() {
        let q = Rationals;
        for s in ["(1 - T)^-1*(1)", "(1 + 2*T - T^3)^-1*(3 - T + 1/2*T^2)", "T^2", "(2 + T)^-1*(1 + T^4)"] {
            let x = OreFraction::parse(&q, s).unwrap();
            let r = LinRep::from_fraction(&x).unwrap();
            assert_eq!(r.expand(12).unwrap(), expand_fraction(&x, 12).unwrap(), "{s}");
            assert_eq!(r.to_fraction().unwrap(), x);
        }
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let x = OreFraction::parse(&f, "(1 + a*T + T^2)^-1*(a + T + a*T^2)").unwrap();
        let r = LinRep::from_fraction(&x).unwrap();
        assert_eq!(r.expand(12).unwrap(), expand_fraction(&x, 12).unwrap());
        assert!(!r.same_series(&r.scale_left(&a)).unwrap());
    }

    #[test]
    fn minimization() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let r = one_dim(&f, a);
        assert_eq!(r.sum(&r).minimize().unwrap().dim(), 0); // f + f = 0 in characteristic 2
        let q = Rationals;
        let two = BigRational::from_integer(2.into());
        let s = LinRep::new(&q, vec![two.clone()], vec![vec![two.clone()]], vec![two]).unwrap();
        assert_eq!(s.sum(&s).minimize().unwrap().dim(), 1);
        assert_eq!(r.minimize().unwrap().dim(), 1);
        assert_eq!(nilpotent_t(&f).minimize().unwrap().dim(), 2);
    }

    #[test]
    fn products_and_inverses() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let r = one_dim(&f, a);
        let inv = r.inverse().unwrap();
        assert_eq!(inv.expand(6).unwrap(), r.expand(6).unwrap().inv().unwrap());
        assert_eq!(
            inv.to_fraction().unwrap(),
            OreFraction::from_poly(OrePoly::parse(&f, "1+a*T").unwrap())
        );
        let unit = LinRep::new(&f, vec![1], vec![vec![0]], vec![1]).unwrap();
        assert_eq!(r.product(&unit).unwrap().expand(8).unwrap(), r.expand(8).unwrap());
        let b = one_dim(&f, f.add(&a, &1));
        let p = r.product(&b).unwrap();
        assert_eq!(p.expand(8).unwrap(), r.expand(8).unwrap().mul(&b.expand(8).unwrap()));
    }

    #[test]
    fn similarity() {
        let f = gf4();
        let a = f.named_constant("a").unwrap();
        let r = nilpotent_t(&f).sum(&one_dim(&f, a)).minimize().unwrap();
        let id = linalg::identity(&f, r.dim());
        assert_eq!(r.similarity_witness(&r).unwrap(), id);
        let b0 = vec![vec![1, a, 0], vec![0, 1, 1], vec![a, 0, 1]];
        let r2 = r.conjugate(&b0).unwrap();
        let b = r.similarity_witness(&r2).unwrap();
        assert!(r.is_similar_via(&r2, &b));
        let other = one_dim(&f, 1).sum(&nilpotent_t(&f)).minimize().unwrap();
        assert!(matches!(r.similarity_witness(&other), Err(Error::NotSimilar(_))));
    }
}
