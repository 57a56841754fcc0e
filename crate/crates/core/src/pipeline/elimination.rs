//! Elimination of unwanted `L(f, i)`: the primorial `D`, a relation `w` on its divisors
//! and the combined function `g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::analytic::elementary::log_int;
use crate::analytic::lvalue::l_value_prec;
use crate::analytic::{ComplexBall, NumericValue, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::integer::{divisors, primes_upto};
use crate::exact::linalg::kernel;
use crate::exact::rational::{self, int, Rational};
use crate::exact::{Coefficient, CycloNumber};
use crate::forms::PeriodicFunction;

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Text(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| match e {
                Entry::Int(k) => Ok(BigInt::from(k)),
                Entry::Text(t) => t.trim().parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

pub(crate) use bigint_strings as bigint_vec_serde;

/// `D`, its divisors, `delta` exponents and a relation `sum_d w_d d^i = 0` for each of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationPlan {
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub a: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub divisors: Vec<u64>,
    pub delta: usize,
    pub exponents: Vec<u64>,
    #[serde(with = "bigint_strings")]
    pub w: Vec<BigInt>,
}

/// Size diagnostics of a plan: `D <= a^(1-2 eps)` and `log delta` against
/// `(1 - 4 eps) log 2 log a / log log a`.
#[derive(Clone, Debug, Serialize)]
pub struct PlanSizes {
    pub d_within_bound: bool,
    pub log_delta: f64,
    pub log_delta_reference: f64,
}

fn threshold_floor(eps: &Rational, a: u64) -> Result<u64> {
    let factor = Rational::one() - eps * int(3);
    let mut prec = 128;
    loop {
        let t = log_int(&a.into(), prec)?.mul_rational(&factor);
        if let Some(fl) = t.unique_floor() {
            return Ok(u64::try_from(fl.max(BigInt::zero())).unwrap_or(0));
        }
        if prec > 4096 {
            return Err(Error::Internal("prime threshold undecided".into()));
        }
        prec *= 2;
    }
}

/// The product of the primes `<= (1 - 3 eps) log a` and its divisors; `exponents` and `w`
/// are left empty.
pub fn primorial_d(eps: &Rational, a: u64) -> Result<EliminationPlan> {
    if !eps.is_positive() || eps >= &rational::rat(1, 4) {
        return Err(Error::Precondition("epsilon must lie in (0, 1/4)".into()));
    }
    if a < 2 {
        return Err(Error::Precondition("a must be at least 2".into()));
    }
    let primes = primes_upto(threshold_floor(eps, a)?);
    let d = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Internal("D overflows u64".into()))?;
    let divs = divisors(d);
    Ok(EliminationPlan {
        epsilon: eps.clone(),
        a,
        d,
        delta: divs.len(),
        divisors: divs,
        exponents: Vec::new(),
        w: Vec::new(),
    })
}

/// The `count` smallest integers `>= 2` of the parity of `p`.
pub fn default_exponents(count: usize, p: u8) -> Vec<u64> {
    (2u64..).filter(|i| i % 2 == p as u64 % 2).take(count).collect()
}

/// Content-reduced kernel vector of the system `sum_d w_d d^(i_j) = 0`, taken from the
/// reduced echelon form and signed so that its first nonzero entry is positive.
pub fn solve_w(divs: &[u64], exponents: &[u64]) -> Result<Vec<BigInt>> {
    if divs.is_empty() || exponents.len() + 1 != divs.len() {
        return Err(Error::Precondition(format!(
            "need delta - 1 = {} exponents, got {}",
            divs.len().saturating_sub(1),
            exponents.len()
        )));
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != exponents.len() || sorted.first().is_some_and(|&i| i < 2) {
        return Err(Error::Precondition("exponents must be distinct and >= 2".into()));
    }
    let rows: Vec<Vec<Rational>> = exponents
        .iter()
        .map(|&i| {
            divs.iter()
                .map(|&d| Rational::from_integer(BigInt::from(d).pow(i as u32)))
                .collect()
        })
        .collect();
    let basis = kernel(&rows, divs.len(), &Rational::one())?;
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("the divisor system has a trivial kernel".into()))?;
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    Ok(ints.into_iter().map(|x| x / &content * &sign).collect())
}

/// `sum_d w_d d^i` for every exponent, all zero for a valid plan.
pub fn relation_residuals(divs: &[u64], w: &[BigInt], exponents: &[u64]) -> Vec<BigInt> {
    exponents
        .iter()
        .map(|&i| {
            divs.iter()
                .zip(w)
                .map(|(&d, wd)| wd * BigInt::from(d).pow(i as u32))
                .sum()
        })
        .collect()
}

impl EliminationPlan {
    /// Full plan; `exponents` defaults to the `delta - 1` smallest of the parity of `p`.
    pub fn build(eps: &Rational, a: u64, p: u8, exponents: Option<Vec<u64>>) -> Result<Self> {
        let mut plan = primorial_d(eps, a)?;
        plan.exponents = exponents.unwrap_or_else(|| default_exponents(plan.delta - 1, p));
        plan.w = solve_w(&plan.divisors, &plan.exponents)?;
        Ok(plan)
    }

    /// Checks the stored data: divisors of `D`, `delta` and every relation.
    pub fn validate(&self) -> Result<()> {
        if self.divisors != divisors(self.d) || self.delta != self.divisors.len() {
            return Err(Error::Precondition(format!("divisor data of D = {} is inconsistent", self.d)));
        }
        if self.w.len() != self.delta || self.w.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("w must be a nonzero vector indexed by the divisors".into()));
        }
        if relation_residuals(&self.divisors, &self.w, &self.exponents)
            .iter()
            .any(|x| !x.is_zero())
        {
            return Err(Error::Precondition("w violates a relation sum_d w_d d^i = 0".into()));
        }
        Ok(())
    }

    pub fn sizes(&self) -> Result<PlanSizes> {
        let prec = 128;
        let ln_a = log_int(&self.a.into(), prec)?;
        let ln_d = log_int(&self.d.into(), prec)?;
        let cap = ln_a.mul_rational(&(Rational::one() - &self.epsilon * int(2)));
        let within = !ln_d.sub(&cap).is_positive();
        let la = ln_a.to_f64();
        let reference = (1.0 - 4.0 * rational_f64(&self.epsilon)) * std::f64::consts::LN_2 * la / la.ln();
        Ok(PlanSizes {
            d_within_bound: within,
            log_delta: (self.delta as f64).ln(),
            log_delta_reference: reference,
        })
    }
}

fn rational_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// `g = sum_{d | D} w_d g_{D/d}` with `g_e(m) = f(m/e)` when `e | m` and zero otherwise;
/// its period is `D T`.
pub fn build_g(f: &PeriodicFunction, d: u64, w: &[BigInt]) -> Result<PeriodicFunction> {
    let divs = divisors(d);
    if w.len() != divs.len() {
        return Err(Error::Precondition(format!(
            "w has {} entries, D = {d} has {} divisors",
            w.len(),
            divs.len()
        )));
    }
    let period = d * f.period();
    let field = f.field().clone();
    let values = (0..period as i64)
        .map(|m| {
            let mut acc = CycloNumber::from_int(&field, 0);
            for (&dd, wd) in divs.iter().zip(w) {
                if (m * dd as i64) % d as i64 == 0 && !wd.is_zero() {
                    let v = f.value(m * dd as i64 / d as i64);
                    acc = acc.plus(&v.scale(&Rational::from_integer(wd.clone())));
                }
            }
            acc
        })
        .collect();
    PeriodicFunction::new(values)
}

#[derive(Clone, Debug)]
pub struct GIdentity {
    pub i: u32,
    pub l_g: ComplexBall,
    /// `D^-i (sum_d w_d d^i) L(f, i)`.
    pub predicted: ComplexBall,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GIdentityReport {
    pub i: u32,
    pub l_g: NumericValue,
    pub predicted: NumericValue,
    pub holds: bool,
}

impl GIdentity {
    pub fn report(&self) -> GIdentityReport {
        GIdentityReport {
            i: self.i,
            l_g: self.l_g.to_value(),
            predicted: self.predicted.to_value(),
            holds: self.holds,
        }
    }
}

/// Numeric check of `L(g, i) = D^-i (sum_d w_d d^i) L(f, i)`.
pub fn check_g_identity(
    f: &PeriodicFunction,
    d: u64,
    w: &[BigInt],
    exponents: &[u32],
    ctx: PrecisionContext,
) -> Result<Vec<GIdentity>> {
    let g = build_g(f, d, w)?;
    let divs = divisors(d);
    exponents
        .iter()
        .map(|&i| {
            let l_g = l_value_prec(&g, i, ctx.bits)?;
            let weight: BigInt = divs
                .iter()
                .zip(w)
                .map(|(&dd, wd)| wd * BigInt::from(dd).pow(i))
                .sum();
            let factor = Rational::new(weight, BigInt::from(d).pow(i));
            let predicted = l_value_prec(f, i, ctx.bits)?.mul_rational(&factor);
            let holds = l_g.sub(&predicted).contains_zero();
            Ok(GIdentity { i, l_g, predicted, holds })
        })
        .collect()
}
