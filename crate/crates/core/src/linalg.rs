//! Dense exact linear algebra over a [`Field`]. Matrices are row-major
//! `Vec<Vec<_>>`; a matrix with zero rows carries its column count
//! separately where it matters.

use crate::error::Result;
use crate::fields::Field;

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut acc = f.zero();
                    for k in 0..inner {
                        if !f.is_zero(&row[k]) && !f.is_zero(&b[k][j]) {
                            acc = f.add(&acc, &f.mul(&row[k], &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat<F: Field>(f: &F, x: &[F::Elem], a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| dot_by(f, x.len(), |k| &x[k], |k| &a[k][j]))
        .collect()
}

/// Matrix times column vector.
pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, y: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| dot(f, row, y)).collect()
}

pub fn dot<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    dot_by(f, x.len().min(y.len()), |k| &x[k], |k| &y[k])
}

fn dot_by<'a, F: Field>(
    f: &F,
    n: usize,
    x: impl Fn(usize) -> &'a F::Elem,
    y: impl Fn(usize) -> &'a F::Elem,
) -> F::Elem
where
    F::Elem: 'a,
{
    let mut acc = f.zero();
    for k in 0..n {
        let (a, b) = (x(k), y(k));
        if !f.is_zero(a) && !f.is_zero(b) {
            acc = f.add(&acc, &f.mul(a, b));
        }
    }
    acc
}

/// Entrywise σⁿ.
pub fn mat_sigma<F: Field>(f: &F, a: &Matrix<F::Elem>, n: i64) -> Result<Matrix<F::Elem>> {
    a.iter()
        .map(|row| row.iter().map(|x| f.sigma_pow(x, n)).collect())
        .collect()
}

pub fn vec_sigma<F: Field>(f: &F, x: &[F::Elem], n: i64) -> Result<Vec<F::Elem>> {
    x.iter().map(|e| f.sigma_pow(e, n)).collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, &mut a.clone()).len()
}

/// A solution of `a·x = b` with free variables set to zero, or `None` if the
/// system is inconsistent. `cols` is the number of unknowns.
pub fn solve<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &[F::Elem],
    cols: usize,
) -> Option<Vec<F::Elem>> {
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel {x : a·x = 0}; `cols` is the number of unknowns.
pub fn nullspace<F: Field>(f: &F, a: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![f.zero(); cols];
        x[free] = f.one();
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = f.neg(&m[r][free]);
        }
        basis.push(x);
    }
    basis
}

/// Determinant by fraction-free (Bareiss) elimination. The empty matrix has
/// determinant 1.
pub fn det<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.len();
    let mut m = a.clone();
    let mut prev = f.one();
    let mut negate = false;
    for k in 0..n {
        if f.is_zero(&m[k][k]) {
            let Some(p) = (k + 1..n).find(|&i| !f.is_zero(&m[i][k])) else {
                return f.zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = f.sub(&f.mul(&m[k][k], &m[i][j]), &f.mul(&m[i][k], &m[k][j]));
                m[i][j] = f.div(&t, &prev).unwrap();
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 { f.one() } else { m[n - 1][n - 1].clone() };
    if negate {
        f.neg(&d)
    } else {
        d
    }
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(identity(f, n))
        .map(|(row, e)| row.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn transpose<E: Clone>(a: &Matrix<E>, cols: usize) -> Matrix<E> {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Kronecker (tensor) product.
pub fn kronecker<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            out.push(
                ra.iter()
                    .flat_map(|x| rb.iter().map(move |y| f.mul(x, y)))
                    .collect(),
            );
        }
    }
    out
}
