use std::fmt;
use std::sync::Arc;

use num::{BigInt, ToPrimitive};
use rand::Rng;

use super::Field;
use crate::error::{Error, Result};

/// Fixed primitive moduli, coefficients low to high (Conway polynomials).
const MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// Largest field order for which log tables are built.
const MAX_ORDER: u64 = 1 << 20;

struct Tables {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    /// exp[i] = xⁱ, encoded base p.
    exp: Vec<u32>,
    /// log[exp[i]] = i; log[0] is unused.
    log: Vec<u32>,
    /// p^j mod (q − 1) for j < k.
    frob_mult: Vec<u64>,
}

/// 𝔽_{pᵏ} = 𝔽ₚ[x]/(m(x)) with σ the Frobenius power x ↦ x^{p^e}.
///
/// Elements are encoded as integers whose base-p digits are the coefficients
/// of the residue polynomial in the generator `a`.
#[derive(Clone)]
pub struct GaloisField {
    tables: Arc<Tables>,
    e: u32,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.tables.p)
            .field("k", &self.tables.k)
            .field("modulus", &self.tables.modulus)
            .field("frobenius_exponent", &self.e)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.tables.p == other.tables.p
            && self.tables.k == other.tables.k
            && self.tables.modulus == other.tables.modulus
            && self.e == other.e
    }
}

impl GaloisField {
    /// 𝔽_{pᵏ} with the shipped modulus and σ = (x ↦ x^{p^e}).
    pub fn new(p: u64, k: u32, e: u32) -> Result<Self> {
        let modulus = MODULI
            .iter()
            .find(|(mp, mk, _)| *mp == p && *mk == k)
            .map(|(_, _, m)| m.to_vec())
            .ok_or_else(|| {
                Error::UnsupportedField(format!("no shipped modulus for GF({p}^{k})"))
            })?;
        Self::with_modulus(p, k, &modulus, e)
    }

    /// 𝔽_{pᵏ} with a caller-supplied monic modulus (low to high), which must
    /// be primitive.
    pub fn with_modulus(p: u64, k: u32, modulus: &[u64], e: u32) -> Result<Self> {
        if !super::is_prime(p) || k < 1 {
            return Err(Error::UnsupportedField(format!("GF({p}^{k})")));
        }
        let q = p
            .checked_pow(k)
            .filter(|q| *q <= MAX_ORDER)
            .ok_or_else(|| Error::UnsupportedField(format!("GF({p}^{k}) is too large")))?;
        if modulus.len() != k as usize + 1
            || modulus[k as usize] != 1
            || modulus.iter().any(|c| *c >= p)
        {
            return Err(Error::InvalidModulus(format!(
                "modulus must be monic of degree {k} over GF({p})"
            )));
        }
        let ku = k as usize;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u64; ku];
        cur[0] = 1;
        for i in 0..q - 1 {
            let code = encode(&cur, p);
            if log[code as usize] != u32::MAX {
                return Err(Error::InvalidModulus(format!(
                    "{modulus:?} is reducible or not primitive over GF({p})"
                )));
            }
            log[code as usize] = i as u32;
            exp.push(code);
            // multiply by x and reduce
            let top = cur[ku - 1];
            for j in (1..ku).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..ku {
                cur[j] = (cur[j] + (p - modulus[j]) * top) % p;
            }
        }
        if encode(&cur, p) != 1 {
            return Err(Error::InvalidModulus(format!(
                "{modulus:?} is reducible or not primitive over GF({p})"
            )));
        }
        let mut frob_mult = Vec::with_capacity(ku);
        let mut acc = 1u64;
        for _ in 0..ku {
            frob_mult.push(acc % (q - 1));
            acc = acc * p % (q - 1).max(1);
        }
        Ok(Self {
            tables: Arc::new(Tables {
                p,
                k,
                q,
                modulus: modulus.to_vec(),
                exp,
                log,
                frob_mult,
            }),
            e: e % k,
        })
    }

    pub fn order(&self) -> u64 {
        self.tables.q
    }

    pub fn degree(&self) -> u32 {
        self.tables.k
    }

    pub fn frobenius_exponent(&self) -> u32 {
        self.e
    }

    fn digits(&self, mut a: u32) -> Vec<u64> {
        let p = self.tables.p as u32;
        (0..self.tables.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d as u64
            })
            .collect()
    }

    fn combine(&self, a: u32, b: u32, op: impl Fn(u64, u64) -> u64) -> u32 {
        let p = self.tables.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.tables.k {
            out += op(a % p, b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }
}

fn encode(digits: &[u64], p: u64) -> u32 {
    digits.iter().rev().fold(0u64, |acc, d| acc * p + d) as u32
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.combine(*a, *b, |x, y| x + y)
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.tables.p;
        self.combine(0, *a, move |_, y| p - y)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.tables.p;
        self.combine(*a, *b, move |x, y| x + p - y)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let t = &self.tables;
        let s = (t.log[*a as usize] as u64 + t.log[*b as usize] as u64) % (t.q - 1);
        t.exp[s as usize]
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let t = &self.tables;
        let l = t.log[*a as usize] as u64;
        Some(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize])
    }

    fn from_int(&self, n: &BigInt) -> u32 {
        let p = self.tables.p as i64;
        (n % BigInt::from(p)).to_i64().expect("residue").rem_euclid(p) as u32
    }

    fn sigma_pow(&self, a: &u32, n: i64) -> Result<u32> {
        if *a == 0 || self.e == 0 {
            return Ok(*a);
        }
        let t = &self.tables;
        let j = (self.e as i64 * n).rem_euclid(t.k as i64) as usize;
        let l = t.log[*a as usize] as u64 * t.frob_mult[j] % (t.q - 1);
        Ok(t.exp[l as usize])
    }

    fn sigma_invertible(&self) -> bool {
        true
    }

    fn sigma_is_identity(&self) -> bool {
        self.e == 0
    }

    fn named_constant(&self, name: &str) -> Option<u32> {
        (name == "a").then_some(self.tables.p as u32)
    }

    fn format_elem(&self, a: &u32) -> String {
        if *a == 0 {
            return "0".into();
        }
        let digits = self.digits(*a);
        let mut terms = Vec::new();
        for (i, d) in digits.iter().enumerate().rev() {
            if *d == 0 {
                continue;
            }
            let term = match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "a".to_string(),
                (1, d) => format!("{d}*a"),
                (i, 1) => format!("a^{i}"),
                (i, d) => format!("{d}*a^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.tables.q) as u32
    }

    fn spec(&self) -> String {
        if self.e == 0 {
            format!("GF({})", self.tables.q)
        } else {
            format!("GF({})[x^{}]", self.tables.q, self.tables.p.pow(self.e))
        }
    }

    fn characteristic(&self) -> u64 {
        self.tables.p
    }
}
