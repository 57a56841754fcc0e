//! Numeric check of the linear forms
//! `Lambda_k = delta sum_l f^(l) [omega^(l(k-1)) S_0^{(k-1)}(omega^l) + (-1)^p omega^(l(1-k)) S_inf^{(k-1)}(omega^-l)]`
//! against `2(-1)^p sum_{i = p mod 2} s_{k,i} L(f,i) + sum_i s_{k,a+1+i} f(i)`, and growth reports.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ball::{ComplexBall, NumericValue, PrecisionContext};
use super::elementary::RootTable;
use super::lvalue::l_value_prec;
use super::series::{side_sums, twisted_sum, Side};
use crate::error::{Error, Result};
use crate::forms::{common_field, fourier_hat, FormFamily, Params, PeriodicFunction, SMatrix};

#[derive(Clone, Debug)]
pub struct LinearFormValue {
    pub k: usize,
    /// `Lambda_k` from the `S` series.
    pub value: ComplexBall,
    /// `Lambda_k` rebuilt from the integers `s_{k,i}`.
    pub reconstruction: ComplexBall,
    pub difference: ComplexBall,
    /// The two enclosures overlap.
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearFormReport {
    pub k: usize,
    pub value: NumericValue,
    pub reconstruction: NumericValue,
    pub combined_bound: String,
    pub holds: bool,
}

impl LinearFormValue {
    /// Combined radius of the difference, the tolerance of the identity.
    pub fn combined_bound_f64(&self) -> f64 {
        self.difference.rad().to_f64()
    }

    pub fn bound_below(&self, eps: &crate::exact::Rational) -> bool {
        self.difference.rad_le(eps)
    }

    pub fn report(&self) -> LinearFormReport {
        LinearFormReport {
            k: self.k,
            value: self.value.to_value(),
            reconstruction: self.reconstruction.to_value(),
            combined_bound: self.difference.rad().mid_decimal(),
            holds: self.holds,
        }
    }
}

fn bits_of(x: &BigInt) -> u32 {
    x.abs().bits() as u32
}

/// Working precision covering the magnitudes of `delta` and of the `s_{k,i}`.
pub fn working_precision(family: &FormFamily, s: &SMatrix, ctx: PrecisionContext) -> u32 {
    let s_bits = s
        .iter()
        .flatten()
        .map(bits_of)
        .max()
        .unwrap_or(0);
    let terms = (family.params.a + family.params.big_n) as u32;
    ctx.bits + bits_of(&family.delta) + s_bits + (32 - terms.leading_zeros()) + 32
}

/// Both sides of the identity for level `k`, given a (possibly altered) matrix `s`.
pub fn lambda_check_with(
    family: &FormFamily,
    s: &SMatrix,
    f: &PeriodicFunction,
    k: usize,
    ctx: PrecisionContext,
) -> Result<LinearFormValue> {
    let params = &family.params;
    if k == 0 || k > s.len() {
        return Err(Error::Precondition(format!(
            "level k = {k} outside 1..={}",
            s.len()
        )));
    }
    let (a, nn) = (params.a as usize, params.big_n);
    let sign: i64 = if params.p == 0 { 1 } else { -1 };
    let prec = working_precision(family, s, ctx);

    let field = common_field(f, nn);
    let hats = fourier_hat(f, nn, &field)?;
    let field_roots = RootTable::new(field.order(), prec);
    let roots = RootTable::new(nn, prec);
    let s0 = side_sums(params, Side::Zero, k, prec)?;
    let sinf = side_sums(params, Side::Infinity, k, prec)?;
    let shift = k as i64 - 1;

    let mut lhs = ComplexBall::zero(prec);
    for (idx, hat) in hats.iter().enumerate() {
        let ell = idx as i64 + 1;
        if hat.representative().is_zero() {
            continue;
        }
        let s0_val = twisted_sum(&s0, ell, &roots).mul(roots.get(-shift * ell));
        let si_val = twisted_sum(&sinf, ell, &roots).mul(roots.get(shift * ell));
        let bracket = s0_val
            .mul(roots.get(shift * ell))
            .add(&si_val.mul(roots.get(-shift * ell)).mul_int(&BigInt::from(sign)));
        lhs = lhs.add(&field_roots.embed(hat).mul(&bracket));
    }
    let lhs = lhs.mul_int(&family.delta);

    let row = &s[k - 1];
    let f_roots = RootTable::new(f.field().order(), prec);
    let mut rhs = ComplexBall::zero(prec);
    for i in (2..=a).filter(|i| i % 2 == params.p as usize % 2) {
        let sk = &row[i - 2];
        if sk.is_zero() {
            continue;
        }
        let l = l_value_prec(f, i as u32, prec)?;
        rhs = rhs.add(&l.mul_int(&(sk * 2 * sign)));
    }
    for i in 0..nn as usize {
        let sk = &row[a - 1 + i];
        if sk.is_zero() {
            continue;
        }
        rhs = rhs.add(&f_roots.embed(f.value(i as i64)).mul_int(sk));
    }

    let difference = lhs.sub(&rhs);
    let holds = difference.contains_zero();
    Ok(LinearFormValue {
        k,
        value: lhs,
        reconstruction: rhs,
        difference,
        holds,
    })
}

pub fn lambda_check(
    family: &FormFamily,
    f: &PeriodicFunction,
    k: usize,
    ctx: PrecisionContext,
) -> Result<LinearFormValue> {
    let s = family.compute_ski()?;
    lambda_check_with(family, &s, f, k, ctx)
}

/// Default identity tolerance demanded of the combined bound.
pub fn identity_tolerance() -> crate::exact::Rational {
    crate::exact::Rational::new(BigInt::from(1), BigInt::from(10).pow(30))
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: u64,
    /// `log|Lambda_1|/n`, absent when the enclosure contains zero (for even `f` the form
    /// vanishes identically unless `p` and `a` share parity).
    pub log_lambda_over_n: Option<f64>,
    pub log_max_s_over_n: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    pub log_alpha: f64,
    pub log_beta: f64,
    /// Whether `log max|s_{1,i}|/n` is nondecreasing along the grid.
    pub s_exponent_monotone: Option<bool>,
    /// At the largest `n`: `log max|s|/n <= log beta + slack` and, when `alpha < 1`,
    /// `log|Lambda_1|/n <= log alpha + slack`. Absent for a single-row grid.
    pub trend_ok: Option<bool>,
    pub slack: f64,
}

/// Natural logarithm of `|x|` for a nonzero integer.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60) as usize;
    let top: f64 = num_traits::ToPrimitive::to_f64(&(x.abs() >> shift)).unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Empirical exponents along `n_grid` for `template` (its `n` is replaced), next to
/// `log alpha` and `log beta` of the template.
pub fn growth_study(
    template: &Params,
    f: &PeriodicFunction,
    n_grid: &[u64],
    slack: f64,
    ctx: PrecisionContext,
) -> Result<GrowthTable> {
    let bounds = crate::pipeline::alpha_beta(template.a, template.r, template.big_n)?;
    let (log_alpha, log_beta) = (bounds.log_alpha.to_f64(), bounds.log_beta.to_f64());
    let mut rows = Vec::with_capacity(n_grid.len());
    let mut prev_n = 0;
    for &n in n_grid {
        if n <= prev_n || n % template.big_n != 0 {
            return Err(Error::Precondition(
                "n grid must be increasing multiples of N".into(),
            ));
        }
        prev_n = n;
        let fam = FormFamily::construct(&template.with_n(n)?, 1)?;
        let s = fam.compute_ski()?;
        let max_s = s[0]
            .iter()
            .filter(|x| !x.is_zero())
            .map(ln_abs_int)
            .fold(f64::NEG_INFINITY, f64::max);
        let lam = lambda_check_with(&fam, &s, f, 1, ctx)?;
        rows.push(GrowthRow {
            n,
            log_lambda_over_n: lam.reconstruction.ln_abs_f64().map(|l| l / n as f64),
            log_max_s_over_n: max_s / n as f64,
        });
    }
    let (monotone, trend) = if rows.len() < 2 {
        (None, None)
    } else {
        let mono = rows
            .windows(2)
            .all(|w| w[1].log_max_s_over_n >= w[0].log_max_s_over_n);
        let last = rows.last().expect("nonempty");
        let s_ok = last.log_max_s_over_n <= log_beta + slack;
        let lam_ok = log_alpha >= 0.0
            || last.log_lambda_over_n.is_none_or(|l| l <= log_alpha + slack);
        (Some(mono), Some(s_ok && lam_ok))
    };
    Ok(GrowthTable {
        rows,
        log_alpha,
        log_beta,
        s_exponent_monotone: monotone,
        trend_ok: trend,
        slack,
    })
}
