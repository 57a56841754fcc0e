//! The series `S_0(z) = sum_{t > n} F(-t) z^t`, `S_inf(z) = sum_{t >= 1} F(t) z^-t` and their
//! derivatives at `N`-th roots of unity.
//!
//! Termwise differentiation turns either derivative into `sum_t G(t) omega^(l t)` for a
//! decaying rational function `G`, so everything reduces to sums of `G` over residue
//! classes mod `N`. Such a sum is computed directly up to a cutoff `t_c >= 16 X`, where
//! `X = 2R + 2` and `R` bounds the poles of `G`. Beyond it `G(t) = sum_j e_j t^-j`. Cauchy's
//! estimate on `|t| = X` gives `|e_j| <= G_max X^j`, and the class sums of `t^-j` are scaled
//! Hurwitz values.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ball::{Ball, ComplexBall, PrecisionContext};
use super::elementary::RootTable;
use super::hurwitz::hurwitz_scaled_range;
use crate::error::{Error, Result};
use crate::exact::rational::{self, int, Rational};
use crate::forms::{build_f, FactoredRationalFunction, FormFamily, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Zero,
    Infinity,
}

/// `sum_{t >= start, t = c mod modulus} G(t)` for every residue `c`.
#[derive(Clone, Debug)]
pub struct ResidueSums {
    pub modulus: u64,
    pub sums: Vec<Ball>,
}

/// Summand of the `(k-1)`-th derivative after pulling out the root-of-unity factor:
/// side 0 gives `F(-t) t(t-1)...(t-k+2)` summed over `t > n`,
/// side infinity gives `(-1)^(k-1) F(t) t(t+1)...(t+k-2)` over `t >= 1`.
pub fn side_summand(f: &FactoredRationalFunction, side: Side, k: usize) -> FactoredRationalFunction {
    let extra = k.saturating_sub(1) as i64;
    match side {
        Side::Zero => {
            // F(-t) = scalar (-1)^(deg) prod (t + rho) / prod (t + sigma)
            let sign = if (f.numerator_degree() - f.denominator_degree()).rem_euclid(2) == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let num = f
                .numerator_roots
                .iter()
                .map(|(r, m)| (-r.clone(), *m))
                .chain((0..extra).map(|i| (int(i), 1)));
            let den = f.denominator_roots.iter().map(|(r, m)| (-r.clone(), *m));
            FactoredRationalFunction::new(&f.scalar * sign, num, den)
        }
        Side::Infinity => {
            let sign = if extra % 2 == 0 { Rational::one() } else { -Rational::one() };
            let num = f
                .numerator_roots
                .iter()
                .cloned()
                .chain((0..extra).map(|i| (int(-i), 1)));
            FactoredRationalFunction::new(&f.scalar * sign, num, f.denominator_roots.clone())
        }
    }
}

fn expand(roots: &[(Rational, u32)]) -> Vec<Rational> {
    // coefficients of prod (t - r)^mu, constant term first
    let mut c = vec![Rational::one()];
    for (r, mult) in roots {
        for _ in 0..*mult {
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
    }
    c
}

/// `e_d, ..., e_{j_max - 1}` with `G(t) = sum_{j >= d} e_j t^-j` at infinity.
fn laurent_at_infinity(g: &FactoredRationalFunction, j_max: usize) -> (usize, Vec<Rational>) {
    let a = expand(&g.numerator_roots);
    let b = expand(&g.denominator_roots);
    let d = b.len() - a.len();
    // u = 1/t: G = u^d A~(u)/B~(u) with reversed coefficient lists, B~(0) = 1
    let ar: Vec<Rational> = a.iter().rev().map(|x| x * &g.scalar).collect();
    let br: Vec<Rational> = b.iter().rev().cloned().collect();
    let len = j_max.saturating_sub(d);
    let mut q: Vec<Rational> = Vec::with_capacity(len);
    for i in 0..len {
        let mut v = ar.get(i).cloned().unwrap_or_else(Rational::zero);
        for kk in 1..=i.min(br.len() - 1) {
            if !br[kk].is_zero() {
                v -= &br[kk] * &q[i - kk];
            }
        }
        q.push(v);
    }
    (d, q)
}

fn ceil_abs(q: &Rational) -> BigInt {
    q.abs().ceil().to_integer()
}

/// Rational upper bound of `|G|` on the circle `|t| = x`, valid when `x` exceeds every
/// pole modulus.
fn circle_bound(g: &FactoredRationalFunction, x: &BigInt) -> Rational {
    let xr = Rational::from_integer(x.clone());
    let mut acc = g.scalar.abs();
    for (r, m) in &g.numerator_roots {
        acc *= rational::pow(&(&xr + r.abs()), *m as i64);
    }
    for (r, m) in &g.denominator_roots {
        acc /= rational::pow(&(&xr - r.abs()), *m as i64);
    }
    acc
}

fn log2_upper(q: &Rational) -> i64 {
    if q.is_zero() {
        return 0;
    }
    q.numer().bits() as i64 - q.denom().bits() as i64 + 1
}

/// Sums of `G(t)` over `t >= start` in each residue class mod `modulus`, each within a
/// rigorous radius at precision `prec`.
pub fn residue_sums(
    g: &FactoredRationalFunction,
    start: i64,
    modulus: u64,
    prec: u32,
) -> Result<ResidueSums> {
    let decay = g.denominator_degree() - g.numerator_degree();
    if decay < 2 && !g.scalar.is_zero() {
        return Err(Error::InsufficientDecay(format!(
            "summand decays like t^-{decay}, need at least t^-2"
        )));
    }
    let nmod = modulus as i64;
    let pole_radius = g
        .denominator_roots
        .iter()
        .map(|(r, _)| ceil_abs(r))
        .max()
        .unwrap_or_else(BigInt::zero);
    let x = pole_radius * 2 + 2;
    let g_max = circle_bound(g, &x);
    let guard = log2_upper(&g_max).max(0) as u32 + 16;
    let p = prec + guard;

    let cutoff: BigInt = (&x * BigInt::from(16)).max(BigInt::from(start));
    let cutoff = i64::try_from(cutoff).map_err(|_| Error::Internal("cutoff overflow".into()))?;
    let mut sums = vec![Ball::zero(p); modulus as usize];
    for t in start..cutoff {
        let v = g.eval_int(t)?;
        if !v.is_zero() {
            let c = t.rem_euclid(nmod) as usize;
            sums[c] = sums[c].add(&Ball::from_rational(&v, p));
        }
    }

    // smallest J (in steps of 4) with G_max (16/15) (X/t)^J (1 + t/(J-1)) <= 2^-p at
    // t = cutoff; the bound decreases in t, and X/t <= 1/16 gives four bits per term
    let xr = Rational::from_integer(x.clone());
    let bound_for = |j: usize, tc: i64| -> Rational {
        let tcr = int(tc);
        &g_max * Rational::new(16.into(), 15.into()) * rational::pow(&(&xr / &tcr), j as i64)
            * (Rational::one() + &tcr / int(j as i64 - 1))
    };
    let limit = Rational::new(BigInt::one(), BigInt::one() << p as usize);
    let mut j_max = (decay.max(2) as usize) + ((p as i64 + log2_upper(&g_max).max(0)) as usize).div_ceil(4);
    while bound_for(j_max, cutoff) > limit {
        j_max += 4;
    }
    let (d, coeffs) = laurent_at_infinity(g, j_max);
    if !coeffs.is_empty() && d < 2 {
        return Err(Error::InsufficientDecay(format!("summand decays like t^-{d}")));
    }

    for (c, sum) in sums.iter_mut().enumerate() {
        let tc = cutoff + (c as i64 - cutoff).rem_euclid(nmod);
        let bound = bound_for(j_max, tc);
        if coeffs.is_empty() {
            continue;
        }
        let xs = Rational::new(tc.into(), modulus.into());
        let zetas = hurwitz_scaled_range(d as u32, (d + coeffs.len() - 1) as u32, &xs, p)?;
        let tcr = int(tc);
        let mut tail = Ball::zero(p);
        let mut tpow = rational::pow(&tcr, d as i64);
        for (e, z) in coeffs.iter().zip(&zetas) {
            if !e.is_zero() {
                tail = tail.add(&z.mul_rational(&(e / &tpow)));
            }
            tpow *= &tcr;
        }
        *sum = sum.add(&tail).add_error(&Ball::error_ball(&bound, p));
    }
    Ok(ResidueSums {
        modulus,
        sums: sums.into_iter().map(|b| b.with_prec(prec)).collect(),
    })
}

/// Residue-class sums behind `S_0^{(k-1)}` or `S_inf^{(k-1)}`:
/// `omega^(l(k-1)) S_0^{(k-1)}(omega^l) = sum_c omega^(l c) A_c` and
/// `omega^(l(1-k)) S_inf^{(k-1)}(omega^-l) = sum_c omega^(l c) A_c`.
pub fn side_sums(params: &Params, side: Side, k: usize, prec: u32) -> Result<ResidueSums> {
    if params.d0() < k as i64 + 2 {
        return Err(Error::InsufficientDecay(format!(
            "d_0 = {} < k + 2 = {}",
            params.d0(),
            k + 2
        )));
    }
    let f = build_f(params);
    let g = side_summand(&f, side, k);
    let start = match side {
        Side::Zero => params.n as i64 + 1,
        Side::Infinity => 1,
    };
    residue_sums(&g, start, params.big_n, prec)
}

/// `sum_c omega^(l c) A_c` at `omega = e^(2 i pi/N)`.
pub fn twisted_sum(sums: &ResidueSums, ell: i64, roots: &RootTable) -> ComplexBall {
    let prec = roots.get(0).prec();
    let mut acc = ComplexBall::zero(prec);
    for (c, a) in sums.sums.iter().enumerate() {
        acc = acc.add(&roots.get(ell * c as i64).mul_real(a));
    }
    acc
}

/// `S_0^{(k-1)}(omega^l)` or `S_inf^{(k-1)}(omega^-l)`.
pub fn eval_s_derivative(
    family: &FormFamily,
    side: Side,
    k: usize,
    ell: i64,
    ctx: PrecisionContext,
) -> Result<ComplexBall> {
    let params = &family.params;
    let sums = side_sums(params, side, k, ctx.bits)?;
    let roots = RootTable::new(params.big_n, ctx.bits);
    let shift = (k as i64 - 1) * ell;
    let twist = twisted_sum(&sums, ell, &roots);
    Ok(match side {
        Side::Zero => twist.mul(roots.get(-shift)),
        Side::Infinity => twist.mul(roots.get(shift)),
    })
}

/// Exact `sum_{t >= 1} F(t) omega^(l t) = sum_c omega^(l c) B_c` for the collapse identity.
pub fn one_sided_sums(params: &Params, prec: u32) -> Result<ResidueSums> {
    residue_sums(&build_f(params), 1, params.big_n, prec)
}
