//! Power series truncated at a fixed order, used for local expansions at `z = 1`.

use num_traits::{One, Zero};

use super::poly::DensePoly;
use super::rational::Rational;

/// `coeffs[i]` is the coefficient of `w^i`; terms of degree `>= order` are discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn from_poly(p: &DensePoly<Rational>, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new(
            (0..order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
            order,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.order())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, order)
    }
}

/// `log(1 + w) = sum_{m >= 1} (-1)^(m+1) w^m / m`, truncated at `order`.
pub fn series_log_at_one(order: usize) -> TruncatedSeries {
    let coeffs = (0..order)
        .map(|m| match m {
            0 => Rational::zero(),
            _ => {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                super::rational::rat(sign, m as i64)
            }
        })
        .collect();
    TruncatedSeries::new(coeffs, order)
}
