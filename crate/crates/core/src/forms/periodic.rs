//! Periodic coefficient functions `f: Z -> Q(zeta_c)` and their discrete Fourier transform.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::coeff::Coefficient;
use crate::exact::cyclo::{CycloField, CycloNumber};
use crate::exact::poly::DensePoly;
use crate::exact::rational::{self, Rational};

/// Values `f(0), ..., f(T-1)`, all in one cyclotomic field (`Q` itself when its order is 1).
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicFunction {
    values: Vec<CycloNumber>,
}

/// JSON form of a single value: a rational string or power-basis coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Rational(String),
    Cyclo(Vec<String>),
}

impl PeriodicFunction {
    pub fn new(values: Vec<CycloNumber>) -> Result<Self> {
        let Some(first) = values.first() else {
            return Err(Error::Precondition("f needs at least one value".into()));
        };
        let order = first.field().order();
        if values.iter().any(|v| v.field().order() != order) {
            return Err(Error::Precondition("f values lie in different fields".into()));
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::Precondition("f is identically zero".into()));
        }
        Ok(PeriodicFunction { values })
    }

    pub fn rational(values: &[Rational]) -> Result<Self> {
        let q = CycloField::new(1);
        Self::new(
            values
                .iter()
                .map(|v| CycloNumber::from_rational(&q, v.clone()))
                .collect(),
        )
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::rational(&values.iter().map(|&v| rational::int(v)).collect::<Vec<_>>())
    }

    /// Indicator of the residue class `u mod period`.
    pub fn indicator(u: u64, period: u64) -> Result<Self> {
        Self::from_ints(&(0..period).map(|i| (i == u % period) as i64).collect::<Vec<_>>())
    }

    /// Parses JSON values. Arrays are coefficient lists over `Q(zeta_T)`;
    /// when every value is a plain rational the field is `Q`.
    pub fn from_specs(specs: &[ValueSpec], big_t: u64) -> Result<Self> {
        let all_rational = specs.iter().all(|s| matches!(s, ValueSpec::Rational(_)));
        let field = CycloField::new(if all_rational { 1 } else { big_t });
        let values = specs
            .iter()
            .map(|s| match s {
                ValueSpec::Rational(q) => Ok(CycloNumber::from_rational(&field, rational::parse(q)?)),
                ValueSpec::Cyclo(cs) => {
                    let coeffs = cs.iter().map(|c| rational::parse(c)).collect::<Result<Vec<_>>>()?;
                    Ok(CycloNumber::from_poly(&field, &DensePoly::new(coeffs)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn specs(&self) -> Vec<ValueSpec> {
        self.values
            .iter()
            .map(|v| match v.to_rational() {
                Some(q) if v.field().order() == 1 => ValueSpec::Rational(rational::to_string(&q)),
                _ => ValueSpec::Cyclo(v.coefficients().iter().map(rational::to_string).collect()),
            })
            .collect()
    }

    pub fn period(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.values[0].field()
    }

    /// `f(m)` for any integer `m`.
    pub fn value(&self, m: i64) -> &CycloNumber {
        &self.values[m.rem_euclid(self.period() as i64) as usize]
    }

    pub fn values(&self) -> &[CycloNumber] {
        &self.values
    }

    /// Rational values, when every value is rational.
    pub fn rational_values(&self) -> Option<Vec<Rational>> {
        self.values.iter().map(CycloNumber::to_rational).collect()
    }

    /// The same function viewed with period `big_n`, a multiple of the period.
    pub fn extend(&self, big_n: u64) -> Result<Self> {
        if !big_n.is_multiple_of(self.period()) {
            return Err(Error::Precondition(format!(
                "period {} does not divide {big_n}",
                self.period()
            )));
        }
        Ok(PeriodicFunction {
            values: (0..big_n as i64).map(|m| self.value(m).clone()).collect(),
        })
    }

    /// Values embedded into `target`, whose order must be a multiple of the field order.
    pub fn lift(&self, target: &Arc<CycloField>) -> Result<Vec<CycloNumber>> {
        self.values.iter().map(|v| v.lift(target)).collect()
    }
}

/// The smallest cyclotomic field containing both `Q(omega_N)` and the values of `f`.
pub fn common_field(f: &PeriodicFunction, big_n: u64) -> Arc<CycloField> {
    let c = f.field().order();
    let l = num_integer::lcm(c, big_n);
    CycloField::new(l)
}

/// `f^(l) = (1/N) sum_{lambda=1}^{N} f(lambda) omega^{-l lambda}` for `l = 1..N`, with values in
/// `target`, a field containing `omega = e^{2 i pi/N}` and the values of `f`.
pub fn fourier_hat(
    f: &PeriodicFunction,
    big_n: u64,
    target: &Arc<CycloField>,
) -> Result<Vec<CycloNumber>> {
    let ext = f.extend(big_n)?;
    if !target.order().is_multiple_of(big_n) {
        return Err(Error::Precondition("target field must contain omega".into()));
    }
    let lifted = ext.lift(target)?;
    let step = (target.order() / big_n) as i64;
    let inv_n = rational::rat(1, big_n as i64);
    Ok((1..=big_n as i64)
        .map(|l| {
            let mut acc = CycloNumber::from_int(target, 0);
            for lambda in 1..=big_n as i64 {
                let w = CycloNumber::omega_pow(target, -step * l * lambda);
                acc = acc.plus(&lifted[(lambda % big_n as i64) as usize].times(&w));
            }
            acc.scale(&inv_n)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn constant_function_transforms() {
        let one = PeriodicFunction::from_ints(&[1]).unwrap();
        let k1 = CycloField::new(1);
        let hat = fourier_hat(&one, 1, &k1).unwrap();
        assert_eq!(hat, vec![CycloNumber::from_int(&k1, 1)]);
        let k2 = CycloField::new(2);
        let hat = fourier_hat(&one, 2, &k2).unwrap();
        assert_eq!(hat, vec![CycloNumber::from_int(&k2, 0), CycloNumber::from_int(&k2, 1)]);
    }

    #[test]
    fn indicator_transform_is_a_single_root() {
        let k = CycloField::new(6);
        let f = PeriodicFunction::indicator(2, 6).unwrap();
        let hat = fourier_hat(&f, 6, &k).unwrap();
        for (idx, v) in hat.iter().enumerate() {
            let l = idx as i64 + 1;
            assert_eq!(v, &CycloNumber::omega_pow(&k, -2 * l).scale(&rat(1, 6)));
        }
    }

    #[test]
    fn inverse_transform_recovers_values() {
        let k = CycloField::new(4);
        let f = PeriodicFunction::from_ints(&[3, -1, 0, 5]).unwrap();
        let hat = fourier_hat(&f, 4, &k).unwrap();
        for m in 0..4i64 {
            let mut acc = CycloNumber::from_int(&k, 0);
            for (idx, v) in hat.iter().enumerate() {
                acc = acc.plus(&v.times(&CycloNumber::omega_pow(&k, m * (idx as i64 + 1))));
            }
            assert_eq!(acc.to_rational(), Some(f.value(m).to_rational().unwrap()));
        }
    }

    #[test]
    fn cyclotomic_values_parse() {
        let specs = vec![
            ValueSpec::Rational("1/2".into()),
            ValueSpec::Cyclo(vec!["0".into(), "1".into()]),
            ValueSpec::Rational("0".into()),
            ValueSpec::Cyclo(vec!["0".into(), "-1".into()]),
        ];
        let f = PeriodicFunction::from_specs(&specs, 4).unwrap();
        assert_eq!(f.field().order(), 4);
        assert_eq!(f.value(5), &CycloNumber::omega_pow(f.field(), 1));
        assert_eq!(f.value(0).to_rational(), Some(rat(1, 2)));
        assert!(PeriodicFunction::from_ints(&[0, 0]).is_err());
        assert_eq!(f.extend(8).unwrap().period(), 8);
    }
}
