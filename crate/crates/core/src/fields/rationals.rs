use num::{BigInt, BigRational, One, Zero};
use rand::Rng;

use super::Field;
use crate::error::Result;

/// ℚ with the identity endomorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn sigma_pow(&self, a: &BigRational, _n: i64) -> Result<BigRational> {
        Ok(a.clone())
    }

    fn sigma_invertible(&self) -> bool {
        true
    }

    fn sigma_is_identity(&self) -> bool {
        true
    }

    fn named_constant(&self, _name: &str) -> Option<BigRational> {
        None
    }

    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=3);
        BigRational::new(num.into(), den.into())
    }

    fn spec(&self) -> String {
        "QQ".into()
    }

    fn characteristic(&self) -> u64 {
        0
    }
}
