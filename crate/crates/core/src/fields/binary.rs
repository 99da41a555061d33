//! GF(2)(t) with polynomials packed 64 coefficients to a word.
//!
//! Same field and same text forms as `RationalFunctionField<PrimeField>` at
//! p = 2; the packed layout keeps the high-degree coefficients produced by
//! t ↦ tᵐ cheap.

use num::{BigInt, Integer};
use rand::Rng;

use super::ratfunc::Substitution;
use super::{Field, PrimeField, RationalFunctionField};
use crate::error::{Error, Result};

/// Bit i of word i/64 is the coefficient of tⁱ; no trailing zero words.
type Bits = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinarySubst {
    Identity,
    /// t ↦ t + 1, an involution.
    Shift,
    /// t ↦ tᵐ, m ≥ 2.
    Power(u64),
}

/// num/den coprime, zero stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinRat {
    num: Bits,
    den: Bits,
}

impl BinRat {
    /// Coefficients of the numerator, low to high.
    pub fn numerator_bits(&self) -> Vec<bool> {
        unpack(&self.num)
    }

    pub fn denominator_bits(&self) -> Vec<bool> {
        unpack(&self.den)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryFunctionField {
    subst: BinarySubst,
}

impl BinaryFunctionField {
    pub fn new(subst: BinarySubst) -> Result<Self> {
        if let BinarySubst::Power(m) = subst {
            if m < 2 {
                return Err(Error::InvalidSubstitution(format!("t -> t^{m}")));
            }
        }
        Ok(Self { subst })
    }

    pub(crate) fn from_subst_text(text: Option<&str>) -> Result<Self> {
        let generic = RationalFunctionField::from_subst_text(PrimeField::new(2)?, text)?;
        let subst = match generic.substitution() {
            Substitution::Affine { v, .. } if *v == 0 => BinarySubst::Identity,
            Substitution::Affine { .. } => BinarySubst::Shift,
            Substitution::Power(m) => BinarySubst::Power(*m),
        };
        Self::new(subst)
    }

    pub fn substitution(&self) -> BinarySubst {
        self.subst
    }

    /// Builds num/den from coefficient lists (low to high); panics if `den`
    /// is zero.
    pub fn from_coeffs(&self, num: &[bool], den: &[bool]) -> BinRat {
        fraction(pack(num), pack(den))
    }
}

fn pack(c: &[bool]) -> Bits {
    let mut out = vec![0u64; c.len().div_ceil(64)];
    for (i, &b) in c.iter().enumerate() {
        if b {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    trim(out)
}

fn unpack(a: &[u64]) -> Vec<bool> {
    match deg(a) {
        None => Vec::new(),
        Some(d) => (0..=d).map(|i| bit(a, i)).collect(),
    }
}

fn trim(mut a: Bits) -> Bits {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &[u64]) -> Option<usize> {
    a.last()
        .map(|w| 64 * (a.len() - 1) + 63 - w.leading_zeros() as usize)
}

fn bit(a: &[u64], i: usize) -> bool {
    a.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
}

fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

/// dst ^= src·t^shift; `dst` must be long enough.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (w, b) = (shift / 64, shift % 64);
    if b == 0 {
        for (j, s) in src.iter().enumerate() {
            dst[w + j] ^= s;
        }
        return;
    }
    for (j, s) in src.iter().enumerate() {
        dst[w + j] ^= s << b;
        let hi = s >> (64 - b);
        if hi != 0 {
            dst[w + j + 1] ^= hi;
        }
    }
}

fn add(a: &[u64], b: &[u64]) -> Bits {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o ^= s;
    }
    trim(out)
}

fn mul(a: &[u64], b: &[u64]) -> Bits {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    // 4-bit window: table[k] = k·b for every k of degree < 4.
    let mut table = vec![vec![0u64; b.len() + 1]; 16];
    for k in 1..16usize {
        for s in 0..4 {
            if k >> s & 1 == 1 {
                let row = &mut table[k];
                xor_shifted(row, b, s);
            }
        }
    }
    let mut out = vec![0u64; a.len() + b.len() + 1];
    for (i, &w) in a.iter().enumerate() {
        for nib in 0..16 {
            let k = (w >> (4 * nib) & 15) as usize;
            if k != 0 {
                xor_shifted(&mut out, &table[k], 64 * i + 4 * nib);
            }
        }
    }
    trim(out)
}

fn divrem(a: &[u64], b: &[u64]) -> (Bits, Bits) {
    let db = deg(b).expect("polynomial division by zero");
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; (a.len() * 64).saturating_sub(db) / 64 + 1];
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let s = dr - db;
        quot[s / 64] |= 1 << (s % 64);
        xor_shifted(&mut rem, b, s);
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn rem_in_place(rem: &mut Bits, b: &[u64]) {
    let db = deg(b).expect("polynomial division by zero");
    while let Some(dr) = deg(rem) {
        if dr < db {
            break;
        }
        xor_shifted(rem, b, dr - db);
        while rem.last() == Some(&0) {
            rem.pop();
        }
    }
}

fn gcd(a: &[u64], b: &[u64]) -> Bits {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        rem_in_place(&mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    x
}

fn fraction(num: Bits, den: Bits) -> BinRat {
    assert!(!den.is_empty(), "zero denominator");
    if num.is_empty() {
        return BinRat {
            num,
            den: vec![1],
        };
    }
    if is_one(&den) {
        return BinRat { num, den };
    }
    let g = gcd(&num, &den);
    if is_one(&g) {
        BinRat { num, den }
    } else {
        BinRat {
            num: divrem(&num, &g).0,
            den: divrem(&den, &g).0,
        }
    }
}

/// g(t + 1).
fn shift(g: &[u64]) -> Bits {
    let Some(d) = deg(g) else {
        return Vec::new();
    };
    let mut acc: Bits = vec![0u64; d / 64 + 1];
    for i in (0..=d).rev() {
        // acc ← acc·(t + 1) + gᵢ
        let mut carry = 0u64;
        for w in acc.iter_mut() {
            let x = *w;
            *w = x ^ (x << 1) ^ carry;
            carry = x >> 63;
        }
        if bit(g, i) {
            acc[0] ^= 1;
        }
    }
    trim(acc)
}

/// g(tᵐ).
fn spread(g: &[u64], m: usize) -> Bits {
    let Some(d) = deg(g) else {
        return Vec::new();
    };
    let mut out = vec![0u64; d * m / 64 + 1];
    for i in 0..=d {
        if bit(g, i) {
            let j = i * m;
            out[j / 64] |= 1 << (j % 64);
        }
    }
    out
}

fn format_poly(a: &[u64]) -> String {
    let Some(d) = deg(a) else {
        return "0".into();
    };
    let terms: Vec<String> = (0..=d)
        .rev()
        .filter(|&i| bit(a, i))
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    terms.join("+")
}

impl Field for BinaryFunctionField {
    type Elem = BinRat;

    fn zero(&self) -> BinRat {
        BinRat {
            num: Vec::new(),
            den: vec![1],
        }
    }

    fn one(&self) -> BinRat {
        BinRat {
            num: vec![1],
            den: vec![1],
        }
    }

    fn is_zero(&self, a: &BinRat) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &BinRat, b: &BinRat) -> BinRat {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return fraction(add(&a.num, &b.num), a.den.clone());
        }
        let g = gcd(&a.den, &b.den);
        let (ad, bd) = if is_one(&g) {
            (a.den.clone(), b.den.clone())
        } else {
            (divrem(&a.den, &g).0, divrem(&b.den, &g).0)
        };
        let num = add(&mul(&a.num, &bd), &mul(&b.num, &ad));
        if num.is_empty() {
            return self.zero();
        }
        // Only factors of g can be shared by num and the denominator.
        let den = mul(&a.den, &bd);
        if is_one(&g) {
            return BinRat { num, den };
        }
        fraction(num, den)
    }

    fn neg(&self, a: &BinRat) -> BinRat {
        a.clone()
    }

    fn sub(&self, a: &BinRat, b: &BinRat) -> BinRat {
        self.add(a, b)
    }

    fn mul(&self, a: &BinRat, b: &BinRat) -> BinRat {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let (mut an, mut ad) = (a.num.clone(), a.den.clone());
        let (mut bn, mut bd) = (b.num.clone(), b.den.clone());
        if !is_one(&bd) {
            let g = gcd(&an, &bd);
            if !is_one(&g) {
                an = divrem(&an, &g).0;
                bd = divrem(&bd, &g).0;
            }
        }
        if !is_one(&ad) {
            let g = gcd(&bn, &ad);
            if !is_one(&g) {
                bn = divrem(&bn, &g).0;
                ad = divrem(&ad, &g).0;
            }
        }
        BinRat {
            num: mul(&an, &bn),
            den: mul(&ad, &bd),
        }
    }

    fn inv(&self, a: &BinRat) -> Option<BinRat> {
        (!a.num.is_empty()).then(|| BinRat {
            num: a.den.clone(),
            den: a.num.clone(),
        })
    }

    fn from_int(&self, n: &BigInt) -> BinRat {
        if n.is_odd() {
            self.one()
        } else {
            self.zero()
        }
    }

    fn sigma_pow(&self, a: &BinRat, n: i64) -> Result<BinRat> {
        if n == 0 || a.num.len() <= 1 && a.num.first().is_none_or(|w| *w <= 1) && is_one(&a.den)
        {
            return Ok(a.clone());
        }
        match self.subst {
            BinarySubst::Identity => Ok(a.clone()),
            BinarySubst::Shift if n % 2 == 0 => Ok(a.clone()),
            BinarySubst::Shift => Ok(BinRat {
                num: shift(&a.num),
                den: shift(&a.den),
            }),
            BinarySubst::Power(m) => {
                if n < 0 {
                    return Err(Error::NegativePowerOfNonInvertibleEndo);
                }
                let e = m
                    .checked_pow(n as u32)
                    .filter(|e| *e <= 1 << 24)
                    .ok_or_else(|| {
                        Error::PrecisionExhausted(format!("degree of σ^{n}(t) exceeds 2^24"))
                    })? as usize;
                Ok(BinRat {
                    num: spread(&a.num, e),
                    den: spread(&a.den, e),
                })
            }
        }
    }

    fn sigma_invertible(&self) -> bool {
        !matches!(self.subst, BinarySubst::Power(_))
    }

    fn sigma_is_identity(&self) -> bool {
        self.subst == BinarySubst::Identity
    }

    fn named_constant(&self, name: &str) -> Option<BinRat> {
        (name == "t").then(|| BinRat {
            num: vec![2],
            den: vec![1],
        })
    }

    fn format_elem(&self, a: &BinRat) -> String {
        let num = format_poly(&a.num);
        if is_one(&a.den) {
            return num;
        }
        let den = format_poly(&a.den);
        let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
        format!("{}/{}", wrap(num), wrap(den))
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BinRat {
        let num = pack(&[rng.gen_bool(0.5), rng.gen_bool(0.5)]);
        let den = if rng.gen_bool(0.5) {
            vec![1]
        } else {
            pack(&[rng.gen_bool(0.5), true])
        };
        fraction(num, den)
    }

    fn spec(&self) -> String {
        match self.subst {
            BinarySubst::Identity => "GF(2)(t)".into(),
            BinarySubst::Shift => "GF(2)(t)[t->t+1]".into(),
            BinarySubst::Power(m) => format!("GF(2)(t)[t->t^{m}]"),
        }
    }

    fn characteristic(&self) -> u64 {
        2
    }
}
