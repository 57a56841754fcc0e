//! Laurent polynomials `sum_{e} c_e z^e` with finitely many nonzero terms.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::coeff::{Coefficient, FieldCoefficient};
use super::poly::DensePoly;
use super::rational::{self, Rational};
use crate::error::Result;

/// `coeffs[i]` is the coefficient of `z^(min_degree + i)`. First and last stored
/// coefficients are nonzero; the zero polynomial is empty with `min_degree = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<T> {
    min_degree: i64,
    coeffs: Vec<T>,
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn new(min_degree: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            min_degree: min_degree + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: T, degree: i64) -> Self {
        Self::new(degree, vec![c])
    }

    pub fn from_poly(p: &DensePoly<T>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_degree)
    }

    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_degree + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Iterator over `(exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_degree + i as i64, c))
    }

    pub fn coeff(&self, e: i64) -> Option<&T> {
        let i = e - self.min_degree;
        if i < 0 {
            return None;
        }
        self.coeffs.get(i as usize).filter(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().unwrap().max(rhs.max_degree().unwrap());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; (hi - lo + 1) as usize];
        for (src, off) in [(self, self.min_degree - lo), (rhs, rhs.min_degree - lo)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let slot = &mut out[off as usize + i];
                *slot = slot.plus(c);
            }
        }
        Self::new(lo, out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_degree: self.min_degree,
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
        Self::new(self.min_degree + rhs.min_degree, out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.min_degree,
            self.coeffs.iter().map(|x| x.times(c)).collect(),
        )
    }

    /// Multiply by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_degree: self.min_degree + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.min_degree - 1,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.times_int(&BigInt::from(self.min_degree + i as i64)))
                .collect(),
        )
    }

    /// Value at `z = 1`, i.e. the sum of all coefficients. `None` for zero.
    pub fn eval_at_one(&self) -> Option<T> {
        let mut it = self.coeffs.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| acc.plus(c)))
    }

    /// `true` when every exponent with a nonzero coefficient is `== residue (mod modulus)`.
    pub fn supported_on_residue(&self, residue: i64, modulus: i64) -> bool {
        self.terms()
            .all(|(e, _)| (e - residue).rem_euclid(modulus) == 0)
    }

    /// Splits into pieces by exponent class: `self = sum_lambda z^lambda piece_lambda`,
    /// each piece supported on multiples of `modulus`.
    pub fn split_by_residue(&self, modulus: usize) -> Vec<Self> {
        let m = modulus as i64;
        let mut pieces = vec![Self::zero(); modulus];
        for (e, c) in self.terms() {
            let lambda = e.rem_euclid(m);
            pieces[lambda as usize] =
                pieces[lambda as usize].add(&Self::monomial(c.clone(), e - lambda));
        }
        pieces
    }

    /// Substitute `z -> c z` where `c.pow(e)` is provided by `power`.
    pub fn substitute_scaled(&self, power: impl Fn(i64) -> T) -> Self {
        Self::new(
            self.min_degree,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, x)| x.times(&power(self.min_degree + i as i64)))
                .collect(),
        )
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        LaurentPoly::new(self.min_degree, self.coeffs.iter().map(f).collect())
    }
}

impl<T: FieldCoefficient> LaurentPoly<T> {
    /// Exact division by `1 - c z`. Returns `None` when the division leaves a
    /// remainder.
    pub fn div_one_minus(&self, c: &T) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // self = z^m q(z); q = (1 - c z) s + remainder
        let q = &self.coeffs;
        let d = q.len() - 1;
        let mut s: Vec<T> = Vec::with_capacity(d);
        for i in 0..d {
            let prev = if i == 0 {
                q[0].zero_like()
            } else {
                c.times(&s[i - 1])
            };
            s.push(q[i].plus(&prev));
        }
        let carry = if d == 0 {
            q[0].zero_like()
        } else {
            c.times(&s[d - 1])
        };
        q[d].plus(&carry)
            .is_zero()
            .then(|| Self::new(self.min_degree, s))
    }

    /// Evaluation at a nonzero field element.
    pub fn eval(&self, x: &T) -> Result<T> {
        let Some(first) = self.coeffs.first() else {
            return Ok(x.zero_like());
        };
        let mut acc = first.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        let base = if self.min_degree < 0 { x.inverse()? } else { x.clone() };
        let mut p = base.one_like();
        for _ in 0..self.min_degree.unsigned_abs() {
            p = p.times(&base);
        }
        Ok(acc.times(&p))
    }
}

impl Serialize for LaurentPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("min_degree", &self.min_degree)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rational::to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}
