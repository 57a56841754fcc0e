//! Exact arithmetic in the cyclotomic field `Q(omega) = Q[x]/Phi_N(x)`, `omega = e^{2 i pi/N}`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::coeff::{Coefficient, FieldCoefficient};
use super::integer::divisors;
use super::poly::DensePoly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// `Phi_N` by dividing `x^N - 1` by `Phi_d` for every proper divisor `d` of `N`.
pub fn cyclotomic_min_poly(n: u64) -> DensePoly<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let divs = divisors(n);
    let mut phis: Vec<DensePoly<Rational>> = Vec::with_capacity(divs.len());
    for (idx, &d) in divs.iter().enumerate() {
        let mut acc = DensePoly::monomial(Rational::one(), d as usize)
            .sub(&DensePoly::constant(Rational::one()));
        for (e, phi) in divs[..idx].iter().zip(&phis) {
            if d % e == 0 {
                let (q, r) = acc.div_rem(phi).expect("cyclotomic polynomials are monic");
                debug_assert!(r.is_zero());
                acc = q;
            }
        }
        phis.push(acc);
    }
    phis.pop().expect("n has at least one divisor")
}

/// The field `Q[x]/Phi_N`, with the reduced powers `x^0, ..., x^{N-1}` cached.
#[derive(Debug)]
pub struct CycloField {
    n: u64,
    modulus: DensePoly<Rational>,
    powers: Vec<DensePoly<Rational>>,
}

impl CycloField {
    pub fn new(n: u64) -> Arc<Self> {
        let modulus = cyclotomic_min_poly(n);
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = DensePoly::constant(Rational::one());
        let x = DensePoly::monomial(Rational::one(), 1);
        for _ in 0..n {
            let reduced = reduce(&cur, &modulus);
            powers.push(reduced.clone());
            cur = reduced.mul(&x);
        }
        Arc::new(CycloField {
            n,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &DensePoly<Rational> {
        &self.modulus
    }
}

fn reduce(p: &DensePoly<Rational>, modulus: &DensePoly<Rational>) -> DensePoly<Rational> {
    p.div_rem(modulus).expect("monic modulus").1
}

/// Element of `Q[x]/Phi_N`, stored as its reduced representative of degree `< phi(N)`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    value: DensePoly<Rational>,
}

impl CycloNumber {
    pub fn from_poly(field: &Arc<CycloField>, p: &DensePoly<Rational>) -> Self {
        CycloNumber {
            field: Arc::clone(field),
            value: reduce(p, &field.modulus),
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, q: Rational) -> Self {
        CycloNumber {
            field: Arc::clone(field),
            value: DensePoly::constant(q),
        }
    }

    pub fn from_int(field: &Arc<CycloField>, k: i64) -> Self {
        Self::from_rational(field, rational::int(k))
    }

    /// `omega^k` for any integer `k`.
    pub fn omega_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let idx = k.rem_euclid(field.n as i64) as usize;
        CycloNumber {
            field: Arc::clone(field),
            value: field.powers[idx].clone(),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Coefficients on the power basis `1, x, ..., x^{phi(N)-1}`, padded with zeros.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut c = self.value.coeffs().to_vec();
        c.resize(self.field.degree(), Rational::zero());
        c
    }

    pub fn representative(&self) -> &DensePoly<Rational> {
        &self.value
    }

    /// The rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.value.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.value.coeffs()[0].clone()),
            Some(_) => None,
        }
    }

    /// Image under `omega -> omega^j`; an automorphism when `gcd(j, N) = 1`.
    pub fn power_map(&self, j: i64) -> Self {
        let mut acc = DensePoly::zero();
        for (e, c) in self.value.coeffs().iter().enumerate() {
            if !Zero::is_zero(c) {
                let w = Self::omega_pow(&self.field, j * e as i64);
                acc = acc.add(&w.value.scale(c));
            }
        }
        CycloNumber {
            field: Arc::clone(&self.field),
            value: acc,
        }
    }

    /// Embedding of an element of `Q(zeta_T)` into `target = Q(zeta_N)`, `T | N`,
    /// sending `zeta_T` to `omega^{N/T}`.
    pub fn lift(&self, target: &Arc<CycloField>) -> Result<Self> {
        if !target.n.is_multiple_of(self.field.n) {
            return Err(Error::Precondition(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.field.n, target.n
            )));
        }
        let step = (target.n / self.field.n) as i64;
        let mut acc = DensePoly::zero();
        for (e, c) in self.value.coeffs().iter().enumerate() {
            if !Zero::is_zero(c) {
                acc = acc.add(&Self::omega_pow(target, step * e as i64).value.scale(c));
            }
        }
        Ok(CycloNumber {
            field: Arc::clone(target),
            value: acc,
        })
    }

    fn same_field(&self, rhs: &Self) {
        assert_eq!(
            self.field.n, rhs.field.n,
            "mixing elements of different cyclotomic fields"
        );
    }

    fn with(&self, value: DensePoly<Rational>) -> Self {
        CycloNumber {
            field: Arc::clone(&self.field),
            value,
        }
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.value == other.value
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients().iter().map(rational::to_string).collect();
        write!(f, "Q(zeta_{})[{}]", self.field.n, parts.join(", "))
    }
}

impl Coefficient for CycloNumber {
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        self.with(self.value.add(&rhs.value))
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        self.with(self.value.sub(&rhs.value))
    }
    fn times(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        if self.field.degree() == 1 {
            return self.with(self.value.mul(&rhs.value));
        }
        self.with(reduce(&self.value.mul(&rhs.value), &self.field.modulus))
    }
    fn negated(&self) -> Self {
        self.with(self.value.neg())
    }
    fn times_int(&self, k: &BigInt) -> Self {
        self.with(self.value.scale(&Rational::from_integer(k.clone())))
    }
    fn zero_like(&self) -> Self {
        self.with(DensePoly::zero())
    }
    fn one_like(&self) -> Self {
        self.with(DensePoly::constant(Rational::one()))
    }
}

impl FieldCoefficient for CycloNumber {
    fn inverse(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(Error::CycloDivisionByZero);
        }
        // u * value + v * Phi_N = 1 since Phi_N is irreducible
        let (g, u, _) = self.value.extended_gcd(&self.field.modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::Internal("cyclotomic modulus not coprime".into()));
        }
        Ok(self.with(reduce(&u, &self.field.modulus)))
    }
}

impl CycloNumber {
    pub fn scale(&self, q: &Rational) -> Self {
        self.with(self.value.scale(q))
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_vec::serialize(&self.coefficients(), s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_min_poly(1), DensePoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_min_poly(2), DensePoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_min_poly(4), DensePoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_min_poly(6), DensePoly::from_ints(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_min_poly(12),
            DensePoly::from_ints(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn roots_of_unity_multiply() {
        let k = CycloField::new(4);
        let one = CycloNumber::from_int(&k, 1);
        let w = CycloNumber::omega_pow(&k, 1);
        assert_eq!(w.times(&CycloNumber::omega_pow(&k, 3)), one);
        assert_eq!(CycloNumber::omega_pow(&k, 2), CycloNumber::from_int(&k, -1));
        assert_eq!(CycloNumber::omega_pow(&k, -1), CycloNumber::omega_pow(&k, 3));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let k = CycloField::new(4);
        let one = CycloNumber::from_int(&k, 1);
        let w = CycloNumber::omega_pow(&k, 1);
        let inv = one.plus(&w).inverse().unwrap();
        assert_eq!(inv, one.minus(&w).scale(&rat(1, 2)));
        assert_eq!(inv.times(&one.plus(&w)), one);
    }

    #[test]
    fn inverse_in_trivial_fields() {
        let k = CycloField::new(2);
        let m1 = CycloNumber::from_int(&k, -1);
        assert_eq!(m1.inverse().unwrap(), m1);
        assert_eq!(CycloNumber::omega_pow(&k, 1), m1);
        let err = m1.zero_like().inverse().unwrap_err();
        assert_eq!(err.to_string(), "division by zero in cyclotomic field");
    }

    #[test]
    fn lift_and_power_map() {
        let k2 = CycloField::new(2);
        let k4 = CycloField::new(4);
        let m1 = CycloNumber::omega_pow(&k2, 1);
        assert_eq!(m1.lift(&k4).unwrap(), CycloNumber::omega_pow(&k4, 2));
        let w = CycloNumber::omega_pow(&k4, 1);
        assert_eq!(w.power_map(-1), CycloNumber::omega_pow(&k4, 3));
        assert_eq!(
            CycloNumber::from_rational(&k4, rat(3, 7)).to_rational(),
            Some(rat(3, 7))
        );
        assert_eq!(w.to_rational(), None);
        assert_eq!(w.coefficients(), vec![int(0), int(1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn nonzero_elements_are_invertible(
            n in 1u64..=30,
            raw in proptest::collection::vec((-20i64..=20, 1i64..=9), 1..16),
        ) {
            let k = CycloField::new(n);
            let p = DensePoly::new(raw.iter().map(|&(a, b)| rat(a, b)).collect());
            let xi = CycloNumber::from_poly(&k, &p);
            prop_assume!(!xi.is_zero());
            let inv = xi.inverse().unwrap();
            prop_assert_eq!(xi.times(&inv), xi.one_like());
        }
    }
}
