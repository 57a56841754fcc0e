//! The constants `alpha`, `beta`, the asymptotic dimension bound and the empirical
//! Siegel fit.

use num_bigint::BigInt;
use serde::Serialize;

use crate::analytic::elementary::{exp, ln2, log_int};
use crate::analytic::{Ball, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::rational::{int, rat};
use crate::forms::SMatrix;
use crate::pade::s_column_space;

/// `log alpha = ((a+1)/N)(log 4 + 1) + (2r+2) log 2N + (4(r+1) - (a+1)/N) log r` and
/// `log beta = ((a+1)/N)(log 2 + 1) + (2r+2)(log(r+1) + log N)`.
#[derive(Clone, Debug)]
pub struct BoundParams {
    pub a: u64,
    pub r: u64,
    pub big_n: u64,
    pub log_alpha: Ball,
    pub log_beta: Ball,
    /// `-log alpha / log beta`.
    pub tau_siegel: Ball,
    /// `1 + tau_siegel`; absent unless `beta > 1`.
    pub dimension_bound: Option<Ball>,
}

impl BoundParams {
    pub fn alpha(&self) -> Ball {
        exp(&self.log_alpha)
    }

    pub fn beta(&self) -> Ball {
        exp(&self.log_beta)
    }

    pub fn alpha_below_one(&self) -> bool {
        self.log_alpha.is_negative()
    }
}

fn ln_u64(x: u64, prec: u32) -> Result<Ball> {
    log_int(&x.into(), prec)
}

pub fn alpha_beta_prec(a: u64, r: u64, big_n: u64, prec: u32) -> Result<BoundParams> {
    if a == 0 || r == 0 || big_n == 0 {
        return Err(Error::Precondition("alpha and beta need a, r, N >= 1".into()));
    }
    let p = prec + 32;
    let e = rat(a as i64 + 1, big_n as i64);
    let l2 = ln2(p);
    let one = Ball::one(p);
    let two_r2 = 2 * r as i64 + 2;
    let log_alpha = l2
        .mul_i64(2)
        .add(&one)
        .mul_rational(&e)
        .add(&ln_u64(2 * big_n, p)?.mul_i64(two_r2))
        .add(&ln_u64(r, p)?.mul_rational(&(int(4 * (r as i64 + 1)) - &e)));
    let log_beta = l2
        .add(&one)
        .mul_rational(&e)
        .add(&ln_u64(r + 1, p)?.add(&ln_u64(big_n, p)?).mul_i64(two_r2));
    let tau = log_alpha.div(&log_beta)?.neg();
    let dimension_bound = log_beta.is_positive().then(|| tau.add(&Ball::one(p)).with_prec(prec));
    Ok(BoundParams {
        a,
        r,
        big_n,
        log_alpha: log_alpha.with_prec(prec),
        log_beta: log_beta.with_prec(prec),
        tau_siegel: tau.with_prec(prec),
        dimension_bound,
    })
}

pub fn alpha_beta(a: u64, r: u64, big_n: u64) -> Result<BoundParams> {
    alpha_beta_prec(a, r, big_n, PrecisionContext::DEFAULT_BITS)
}

/// `floor(a / (log a)^2)`.
pub fn theorem1_r(a: u64) -> Result<u64> {
    if a < 2 {
        return Err(Error::ATooSmall(format!("a = {a}")));
    }
    let mut prec = 128;
    loop {
        let la = ln_u64(a, prec)?;
        let q = Ball::from_bigint(&a.into(), prec).div(&la.sqr())?;
        if let Some(fl) = q.unique_floor() {
            return u64::try_from(fl).map_err(|_| Error::Internal("r overflow".into()));
        }
        if prec > 4096 {
            return Err(Error::Internal("floor of a/(log a)^2 undecided".into()));
        }
        prec *= 2;
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Bound {
    pub a: u64,
    pub big_n: u64,
    pub r: u64,
    pub bounds: BoundParams,
    /// `1 - log alpha/log beta - N`.
    pub value: Ball,
    /// `value (1 + log 2) / log a`, tending to one.
    pub ratio_to_limit: Ball,
}

impl Theorem1Bound {
    /// `ratio_to_limit - 1`.
    pub fn epsilon(&self) -> Ball {
        self.ratio_to_limit.sub(&Ball::one(self.ratio_to_limit.prec()))
    }

    pub fn report(&self) -> BoundReport {
        BoundReport {
            a: self.a,
            big_n: self.big_n,
            r: self.r,
            alpha: sci_from_log(&self.bounds.log_alpha),
            beta: sci_from_log(&self.bounds.log_beta),
            bound: self.value.mid_decimal(),
            ratio_to_limit: self.ratio_to_limit.mid_decimal(),
        }
    }
}

/// Dimension lower bound with `r = floor(a/(log a)^2)`, shifted down by `N`.
pub fn theorem1_bound(a: u64, big_n: u64) -> Result<Theorem1Bound> {
    let r = theorem1_r(a)?;
    if big_n == 0 || r == 0 || 3 * big_n * r >= a {
        return Err(Error::ATooSmall(format!(
            "a = {a}, N = {big_n} gives r = {r}, need 1 <= r < a/(3N)"
        )));
    }
    let prec = PrecisionContext::DEFAULT_BITS;
    let bounds = alpha_beta_prec(a, r, big_n, prec)?;
    let value = bounds
        .tau_siegel
        .add(&Ball::from_int(1 - big_n as i64, prec));
    let ratio = value
        .mul(&ln2(prec).add(&Ball::one(prec)))
        .div(&ln_u64(a, prec)?)?;
    Ok(Theorem1Bound {
        a,
        big_n,
        r,
        bounds,
        value,
        ratio_to_limit: ratio,
    })
}

/// JSON bound report; reals are decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub a: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub r: u64,
    pub alpha: String,
    pub beta: String,
    pub bound: String,
    pub ratio_to_limit: String,
}

/// `exp(log)` in scientific notation with 20 significant digits.
pub fn sci_from_log(log: &Ball) -> String {
    let prec = log.prec().max(128);
    let ln10 = ln_u64(10, prec).expect("log 10");
    let l10 = log.with_prec(prec).div(&ln10).expect("log 10 > 0");
    let Some(e) = l10.unique_floor() else {
        return format!("exp({})", log.mid_decimal());
    };
    let frac = l10.sub(&Ball::from_bigint(&e, prec)).mul(&ln10);
    let half = Ball::one(prec).div_i64(2);
    let scaled = exp(&frac).mul_int(&BigInt::from(10).pow(19)).add(&half);
    let digits = (scaled.mid_scaled() >> prec as usize).to_string();
    let (digits, e) = if digits.len() > 20 { (&digits[..20], e + 1) } else { (&digits[..], e) };
    format!("{}.{}e{e}", &digits[..1], &digits[1..])
}

/// One instance of the criterion: an integer matrix, `log Q_n` and `log` of the largest
/// linear form.
#[derive(Clone, Debug)]
pub struct SiegelSample {
    pub n: u64,
    pub matrix: SMatrix,
    pub log_q: f64,
    pub log_forms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SiegelFit {
    /// Minus the least-squares slope of `log |forms|` against `log Q_n`.
    pub tau_fit: f64,
    pub dimension_bound: f64,
    /// Least-squares slope of `log max |entry|` against `log Q_n`, ideally one.
    pub size_exponent: f64,
    pub samples: usize,
    pub heuristic: bool,
}

/// Least-squares slope of `y` against `x`.
fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn log_max_entry(m: &SMatrix) -> f64 {
    m.iter()
        .flatten()
        .filter(|x| !num_traits::Zero::is_zero(*x))
        .map(crate::analytic::lambda::ln_abs_int)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Fits `|forms| <= Q_n^(-tau)` over the samples and returns `tau + 1`. The hypotheses of
/// the criterion are asymptotic, so the fit is only a heuristic.
pub fn siegel_lower_bound(samples: &[SiegelSample]) -> Result<SiegelFit> {
    if samples.len() < 2 {
        return Err(Error::Precondition("the fit needs at least two samples".into()));
    }
    if samples.windows(2).any(|w| w[1].log_q <= w[0].log_q) {
        return Err(Error::Precondition("Q_n must increase".into()));
    }
    let first = s_column_space(&samples[0].matrix)?;
    for s in &samples[1..] {
        if s_column_space(&s.matrix)? != first {
            return Err(Error::CriterionHypotheses(format!(
                "column space at n = {} differs from n = {}",
                s.n, samples[0].n
            )));
        }
    }
    let x: Vec<f64> = samples.iter().map(|s| s.log_q).collect();
    let forms: Vec<f64> = samples.iter().map(|s| s.log_forms).collect();
    let sizes: Vec<f64> = samples.iter().map(|s| log_max_entry(&s.matrix)).collect();
    let tau = -ols_slope(&x, &forms);
    Ok(SiegelFit {
        tau_fit: tau,
        dimension_bound: tau + 1.0,
        size_exponent: ols_slope(&x, &sizes),
        samples: samples.len(),
        heuristic: true,
    })
}
