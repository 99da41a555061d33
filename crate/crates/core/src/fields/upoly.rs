//! Dense commutative univariate polynomials over a base field, low to high,
//! without trailing zeros. Used for the function fields K(t).

use super::Field;

pub(crate) type Poly<E> = Vec<E>;

pub(crate) fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub(crate) fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

pub(crate) fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub(crate) fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}


pub(crate) fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub(crate) fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Euclidean division; panics on a zero divisor.
pub(crate) fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = f.inv(b.last().unwrap()).unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![f.zero(); a.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = f.mul(&rem[i + b.len() - 1], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, bj));
        }
        quot[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(f, quot), trim(f, rem))
}

pub(crate) fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(f, a, &f.inv(lc).unwrap()),
    }
}

pub(crate) fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub(crate) fn is_one<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.len() == 1 && f.is_one(&a[0])
}

/// g(u·t + v).
pub(crate) fn compose_affine<F: Field>(
    f: &F,
    g: &[F::Elem],
    u: &F::Elem,
    v: &F::Elem,
) -> Poly<F::Elem> {
    let lin = trim(f, vec![v.clone(), u.clone()]);
    let mut acc: Poly<F::Elem> = Vec::new();
    for c in g.iter().rev() {
        acc = mul(f, &acc, &lin);
        acc = add(f, &acc, &constant(f, c.clone()));
    }
    acc
}

/// g(t^m).
pub(crate) fn compose_power<F: Field>(f: &F, g: &[F::Elem], m: usize) -> Poly<F::Elem> {
    if g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); (g.len() - 1) * m + 1];
    for (i, c) in g.iter().enumerate() {
        out[i * m] = c.clone();
    }
    out
}

/// Text form in the variable `var`, high degree first.
pub(crate) fn format<F: Field>(f: &F, a: &[F::Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let s = f.format_elem(c);
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            body
        } else if body == "1" {
            mono
        } else {
            format!("{body}*{mono}")
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        out.push_str(&term);
    }
    out
}
