//! The special case `N = D`, `f = 1`: the scaled form `(-1)^p Lambda_1 / (2 delta)` built
//! from `g` against the direct sum `sum_d w_d sum_{j=1}^{d} sum_{m >= 1} F(m D + j D/d)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::elimination::{bigint_vec_serde, build_g};
use crate::analytic::lambda::lambda_check_with;
use crate::analytic::series::residue_sums;
use crate::analytic::{ComplexBall, NumericValue, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::integer::divisors;
use crate::exact::rational::rat;
use crate::forms::{build_f, FormFamily, Params, PeriodicFunction};

/// JSON input of the `fsz` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FszInstance {
    pub a: u64,
    pub r: u64,
    pub n: u64,
    pub p: u8,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(with = "bigint_vec_serde")]
    pub w: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct FszOutcome {
    pub lhs: ComplexBall,
    pub rhs: ComplexBall,
    pub difference: ComplexBall,
    /// `F(j D/d) = 0` for `1 <= j <= d`, so the `m = 0` terms vanish.
    pub zero_start: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FszReport {
    pub lhs: NumericValue,
    pub rhs: NumericValue,
    pub combined_bound: String,
    pub zero_start: bool,
    pub holds: bool,
}

impl FszOutcome {
    pub fn report(&self) -> FszReport {
        FszReport {
            lhs: self.lhs.to_value(),
            rhs: self.rhs.to_value(),
            combined_bound: self.difference.rad().mid_decimal(),
            zero_start: self.zero_start,
            holds: self.holds,
        }
    }

    pub fn bound_below(&self, eps: &crate::exact::Rational) -> bool {
        self.difference.rad_le(eps)
    }
}

impl FszInstance {
    pub fn params(&self) -> Result<Params> {
        Params::relaxed(self.a, self.r, self.d, self.n, self.p, 1)
    }
}

pub fn fsz_equivalence(params: &Params, d: u64, w: &[BigInt], ctx: PrecisionContext) -> Result<FszOutcome> {
    if params.big_n != d {
        return Err(Error::Precondition(format!("N = {} must equal D = {d}", params.big_n)));
    }
    if !params.n.is_multiple_of(2 * d) {
        return Err(Error::Precondition("n must be a multiple of 2N".into()));
    }
    if params.p as u64 % 2 != params.a % 2 {
        return Err(Error::Precondition("p must have the parity of a".into()));
    }
    if params.big_t != 1 {
        return Err(Error::Precondition("the base function has period T = 1".into()));
    }
    let one = PeriodicFunction::from_ints(&[1])?;
    let g = build_g(&one, d, w)?;
    let divs = divisors(d);

    let family = FormFamily::construct(params, 1)?;
    let s = family.compute_ski()?;
    let lam = lambda_check_with(&family, &s, &g, 1, ctx)?;
    let sign = if params.p.is_multiple_of(2) { 1 } else { -1 };
    let scale = rat(sign, 1) / (crate::exact::Rational::from_integer(family.delta.clone()) * rat(2, 1));
    let lhs = lam.value.mul_rational(&scale).with_prec(ctx.bits);

    let f = build_f(params);
    let di = d as i64;
    let mut zero_start = true;
    for (&dd, _) in divs.iter().zip(w) {
        for j in 1..=dd as i64 {
            zero_start &= f.eval_int(j * di / dd as i64)?.is_zero();
        }
    }
    // every t = m D + j D/d with m >= 1 lies above D, in the class j D/d mod D
    let sums = residue_sums(&f, di + 1, d, ctx.bits)?;
    let mut rhs = ComplexBall::zero(ctx.bits);
    for (&dd, wd) in divs.iter().zip(w) {
        if wd.is_zero() {
            continue;
        }
        for j in 1..=dd as i64 {
            let c = (j * di / dd as i64).rem_euclid(di) as usize;
            rhs = rhs.add(&ComplexBall::from_real(sums.sums[c].mul_int(wd)));
        }
    }
    let difference = lhs.sub(&rhs);
    let holds = difference.contains_zero();
    Ok(FszOutcome {
        lhs,
        rhs,
        difference,
        zero_start,
        holds,
    })
}

/// Tolerance demanded of the combined bound for the specialization.
pub fn fsz_tolerance() -> crate::exact::Rational {
    crate::exact::Rational::new(BigInt::from(1), BigInt::from(10).pow(20))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_divisor_specialization() {
        let params = Params::relaxed(5, 1, 2, 4, 1, 1).unwrap();
        let out = fsz_equivalence(&params, 2, &w(&[8, -1]), PrecisionContext::default()).unwrap();
        assert!(out.zero_start);
        assert!(out.holds);
        assert!(out.bound_below(&fsz_tolerance()));
        assert!(!out.rhs.contains_zero());
    }

    #[test]
    fn degenerate_specialization() {
        let params = Params::new(4, 1, 1, 4, 0, 1).unwrap();
        let out = fsz_equivalence(&params, 1, &w(&[1]), PrecisionContext::default()).unwrap();
        assert!(out.holds && out.zero_start);
    }

    #[test]
    fn identity_holds_for_any_w() {
        // both sides depend on g only, not on which exponent w eliminates
        let params = Params::relaxed(5, 1, 2, 4, 1, 1).unwrap();
        let out = fsz_equivalence(&params, 2, &w(&[2, -1]), PrecisionContext::new(128).unwrap()).unwrap();
        assert!(out.holds);
    }

    #[test]
    fn preconditions() {
        let ctx = PrecisionContext::default();
        let odd_n = Params::relaxed(5, 1, 2, 2, 1, 1).unwrap();
        assert!(fsz_equivalence(&odd_n, 2, &w(&[8, -1]), ctx).is_err());
        let parity = Params::relaxed(5, 1, 2, 4, 0, 1).unwrap();
        assert!(fsz_equivalence(&parity, 2, &w(&[8, -1]), ctx).is_err());
        let mismatch = Params::new(4, 1, 1, 4, 0, 1).unwrap();
        assert!(fsz_equivalence(&mismatch, 2, &w(&[8, -1]), ctx).is_err());
    }
}
