//! Dense univariate polynomials over a [`Coefficient`] ring.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::coeff::{Coefficient, FieldCoefficient};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Coefficients indexed by degree; the last stored coefficient is nonzero.
/// The zero polynomial has no coefficients, and its degree is `None`, which
/// orders below every finite degree.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> DensePoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.plus(s);
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// Horner evaluation; the zero polynomial evaluates to `x.zero_like()`.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times_int(&BigInt::from(i)))
                .collect(),
        )
    }

    /// `self(inner(w))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }
}

impl<T: FieldCoefficient> DensePoly<T> {
    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inverse()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = lead.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].times(&lead_inv);
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].minus(&c.times(d));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(&l.inverse()?)),
        }
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let one_like = |p: &Self| p.leading().map(|c| c.one_like());
        let one = one_like(self)
            .or_else(|| one_like(other))
            .ok_or(Error::DivisionByZero)?;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::constant(one.clone()), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u2 = u0.sub(&q.mul(&u1));
            let v2 = v0.sub(&q.mul(&v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let lead_inv = r0.leading().ok_or(Error::DivisionByZero)?.inverse()?;
        Ok((r0.scale(&lead_inv), u0.scale(&lead_inv), v0.scale(&lead_inv)))
    }
}

impl DensePoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// `true` when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }
}

impl Serialize for DensePoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_vec::serialize(&self.coeffs, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn arithmetic_and_degree() {
        let p = DensePoly::from_ints(&[1, 2, 3]);
        let q = DensePoly::from_ints(&[0, 1]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(DensePoly::<Rational>::zero().degree(), None);
        assert!(DensePoly::<Rational>::zero().degree() < Some(0));
        assert_eq!(p.mul(&q), DensePoly::from_ints(&[0, 1, 2, 3]));
        assert_eq!(p.sub(&p), DensePoly::zero());
        assert_eq!(p.derivative(), DensePoly::from_ints(&[2, 6]));
        assert_eq!(p.eval(&int(2)), int(17));
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p = DensePoly::from_ints(&[-1, 0, 1]);
        let d = DensePoly::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(q, DensePoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let (g, u, v) = p.extended_gcd(&DensePoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(g, DensePoly::from_ints(&[1, 1]));
        assert_eq!(
            u.mul(&p).add(&v.mul(&DensePoly::from_ints(&[1, 1]))),
            g
        );
        let (g, _, _) = DensePoly::from_ints(&[1, 0, 1])
            .extended_gcd(&DensePoly::from_ints(&[0, 1]))
            .unwrap();
        assert_eq!(g, DensePoly::constant(int(1)));
    }

    #[test]
    fn composition_is_taylor_shift() {
        // p(x) = x^2, p(1 + w) = 1 + 2w + w^2
        let p = DensePoly::from_ints(&[0, 0, 1]);
        let shift = DensePoly::new(vec![int(1), int(1)]);
        assert_eq!(p.compose(&shift), DensePoly::from_ints(&[1, 2, 1]));
        assert_eq!(
            DensePoly::new(vec![rat(1, 2)]).compose(&shift),
            DensePoly::new(vec![rat(1, 2)])
        );
    }
}
