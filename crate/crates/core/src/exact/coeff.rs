use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient ring for the polynomial types.
///
/// Zero and one are produced from an existing element because cyclotomic
/// numbers need to know which field they live in.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times_int(&self, k: &BigInt) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

pub trait FieldCoefficient: Coefficient {
    fn inverse(&self) -> Result<Self>;

    fn divided(&self, rhs: &Self) -> Result<Self> {
        Ok(self.times(&rhs.inverse()?))
    }
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times_int(&self, k: &BigInt) -> Self {
        self * Rational::from_integer(k.clone())
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl FieldCoefficient for Rational {
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
}
