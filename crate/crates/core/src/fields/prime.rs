use num::{BigInt, ToPrimitive};
use rand::Rng;

use super::{is_prime, Field};
use crate::error::{Error, Result};

/// 𝔽ₚ for a prime p < 2³², with the identity endomorphism (the Frobenius of
/// a prime field is trivial).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::UnsupportedField(format!(
                "GF({p}): modulus must be a prime below 2^32"
            )));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub(crate) fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        let m = n % BigInt::from(self.p);
        let m = m.to_i64().expect("residue fits in i64");
        self.reduce_i64(m)
    }

    fn sigma_pow(&self, a: &u64, _n: i64) -> Result<u64> {
        Ok(*a)
    }

    fn sigma_invertible(&self) -> bool {
        true
    }

    fn sigma_is_identity(&self) -> bool {
        true
    }

    fn named_constant(&self, _name: &str) -> Option<u64> {
        None
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn spec(&self) -> String {
        format!("GF({})", self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}
