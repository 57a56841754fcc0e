//! Hurwitz zeta values `zeta(s, x) = sum_{k >= 0} (k + x)^-s` for integer `s >= 2` and
//! rational `x > 0`, by direct summation followed by Euler-Maclaurin.
//!
//! With `y = x + M` and `K` correction terms the remainder is bounded by
//! `4 (s)_{2K} (2 pi)^-2K y^(1-s-2K) / (s + 2K - 1)`, using `|B_2K(t - [t])| <= 4 (2K)!/(2 pi)^2K`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::{Ball, ComplexBall, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::integer::factorial;
use crate::exact::rational::{self, int, rat, Rational};

const GUARD: u32 = 32;

/// Exact `B_0, ..., B_m` (with `B_1 = -1/2`), cached across calls.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = cache.lock().expect("bernoulli cache");
    while b.len() <= m {
        let n = b.len();
        let value = if n == 1 {
            rat(-1, 2)
        } else if n % 2 == 1 {
            Rational::zero()
        } else {
            // sum_{k=0}^{n} C(n+1, k) B_k = 0
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc += bk * Rational::from_integer(binomial(BigInt::from(n + 1), BigInt::from(k)));
                }
            }
            -acc / int(n as i64 + 1)
        };
        b.push(value);
    }
    b[..=m].to_vec()
}

/// Truncation parameters: `K` correction terms and `M` direct terms.
fn plan(prec: u32, s_max: u32, x: &Rational) -> (usize, u64) {
    // ((s + 2K)/(2 pi y))^2K <= 2^(-6K) once y >= 8 (s + 2K)/(2 pi)
    let k = ((prec + 8) as usize).div_ceil(6).max(2);
    let y_min = (1.28 * (s_max as f64 + 2.0 * k as f64)).ceil() as i64 + 1;
    let x_floor = (x.numer() / x.denom()).to_i64().unwrap_or(i64::MAX);
    let m = (y_min - x_floor).max(0) as u64;
    (k, m)
}

/// `c^s zeta(s, x)` for every `s` in `s_lo..=s_hi`, with `c = x` when `scaled` (the values
/// then stay of size one for large `x`) and `c = 1` otherwise.
fn batch(s_lo: u32, s_hi: u32, x: &Rational, scaled: bool, prec: u32) -> Result<Vec<Ball>> {
    if s_lo < 2 {
        return Err(Error::Divergent(format!("zeta(s, x) needs s >= 2, got s = {s_lo}")));
    }
    if !x.is_positive() {
        return Err(Error::Precondition("Hurwitz zeta needs x > 0".into()));
    }
    let p = prec + GUARD;
    let (k_terms, m) = plan(prec, s_hi, x);
    let c = if scaled { x.clone() } else { Rational::one() };
    let count = (s_hi - s_lo + 1) as usize;
    let mut sums = vec![Ball::zero(p); count];

    for i in 0..m {
        let ratio = Ball::from_rational(&(&c / (x + int(i as i64))), p);
        let mut pw = ratio.pow(s_lo);
        for sum in sums.iter_mut() {
            *sum = sum.add(&pw);
            pw = pw.mul(&ratio);
        }
    }

    let y = x + int(m as i64);
    let y_ball = Ball::from_rational(&y, p);
    let inv_y = Ball::one(p).div(&y_ball)?;
    let inv_y2 = inv_y.sqr();
    let bern = bernoulli_numbers(2 * k_terms);
    let bern_scaled: Vec<Ball> = (1..=k_terms)
        .map(|j| {
            let q = &bern[2 * j] / Rational::from_integer(factorial(2 * j as u64));
            Ball::from_rational(&q, p)
        })
        .collect();
    // (2 pi)^-2K <= (25/157)^2K
    let inv_two_pi_pow = Ball::from_rational(&rational::pow(&rat(25, 157), 2 * k_terms as i64), p)
        .abs_upper();

    let ratio = Ball::from_rational(&(&c / &y), p);
    let mut base = ratio.pow(s_lo);
    for (idx, sum) in sums.iter_mut().enumerate() {
        let s = (s_lo as usize + idx) as i64;
        // base = (c/y)^s
        let mut tail = base.mul(&y_ball).div_i64(s - 1).add(&base.div_i64(2));
        // g = (s)_{2j-1} y^(1-2j)
        let mut g = inv_y.mul_i64(s);
        for (j, bj) in bern_scaled.iter().enumerate() {
            tail = tail.add(&bj.mul(&g).mul(&base));
            if j + 1 < k_terms {
                let j1 = j as i64 + 1;
                g = g.mul_i64((s + 2 * j1 - 1) * (s + 2 * j1)).mul(&inv_y2);
            }
        }
        let remainder = base.mul(&g).mul(&inv_two_pi_pow).mul_i64(4);
        *sum = sum.add(&tail).add_error(&remainder);
        base = base.mul(&ratio);
    }
    Ok(sums.into_iter().map(|b| b.with_prec(prec)).collect())
}

/// `zeta(s, x)` as a real ball, for any rational `x > 0`.
pub fn hurwitz_real(s: u32, x: &Rational, prec: u32) -> Result<Ball> {
    Ok(batch(s, s, x, false, prec)?.remove(0))
}

/// `x^s zeta(s, x)` for `s` in `s_lo..=s_hi`.
pub fn hurwitz_scaled_range(s_lo: u32, s_hi: u32, x: &Rational, prec: u32) -> Result<Vec<Ball>> {
    batch(s_lo, s_hi, x, true, prec)
}

/// `zeta(s, x)` for `s` in `s_lo..=s_hi`.
pub fn hurwitz_range(s_lo: u32, s_hi: u32, x: &Rational, prec: u32) -> Result<Vec<Ball>> {
    batch(s_lo, s_hi, x, false, prec)
}

/// `zeta(s, x)` for `s >= 2` and `0 < x <= 1`.
pub fn hurwitz_zeta(s: i64, x: &Rational, ctx: PrecisionContext) -> Result<ComplexBall> {
    if s <= 1 {
        return Err(Error::Divergent(format!("zeta(s, x) diverges for s = {s}")));
    }
    if !x.is_positive() || x > &Rational::one() {
        return Err(Error::Precondition(format!(
            "Hurwitz zeta argument x = {} must lie in (0, 1]",
            rational::to_string(x)
        )));
    }
    Ok(ComplexBall::from_real(hurwitz_real(s as u32, x, ctx.bits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::elementary::pi;
    use proptest::prelude::*;

    const ZETA2_40: &str = "1.6449340668482264364724151666460251892189";
    const ZETA3_40: &str = "1.2020569031595942853997381615114499907649";

    /// `sum_{k<N} 1/k^2` plus the integral tail enclosure `[1/N, 1/(N-1)]`.
    fn zeta2_oracle(prec: u32) -> Ball {
        let n = 4000i64;
        let mut acc = Ball::zero(prec);
        for k in 1..n {
            acc = acc.add(&Ball::one(prec).div_i64(k * k));
        }
        let lo = rat(1, n);
        let hi = rat(1, n - 1);
        let mid = (&lo + &hi) / int(2);
        let half = (&hi - &lo) / int(2);
        acc.add(&Ball::from_rational(&mid, prec))
            .add_error(&Ball::error_ball(&half, prec))
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[10], rat(5, 66));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn riemann_zeta_values() {
        let ctx = PrecisionContext::default();
        let z2 = hurwitz_zeta(2, &int(1), ctx).unwrap();
        assert!(z2.re.mid_decimal().starts_with(&ZETA2_40[..40]));
        assert!(z2.rad().to_f64() < 1e-70);
        let z3 = hurwitz_zeta(3, &int(1), ctx).unwrap();
        assert!(z3.re.mid_decimal().starts_with(&ZETA3_40[..40]));
        let exact = pi(256).sqr().div_i64(6);
        assert!(z2.re.sub(&exact).contains_zero());
    }

    #[test]
    fn zeta2_agrees_with_integral_oracle() {
        let oracle = zeta2_oracle(128);
        let z2 = hurwitz_real(2, &int(1), 128).unwrap();
        assert!(oracle.sub(&z2).contains_zero());
    }

    #[test]
    fn half_shift_identity() {
        for s in 2u32..=4 {
            let half = hurwitz_real(s, &rat(1, 2), 200).unwrap();
            let z = hurwitz_real(s, &int(1), 200).unwrap();
            let expected = z.mul_int(&((BigInt::one() << s as usize) - 1u32));
            assert!(half.sub(&expected).contains_zero(), "s = {s}");
        }
    }

    #[test]
    fn divergent_and_out_of_range() {
        let ctx = PrecisionContext::default();
        let err = hurwitz_zeta(1, &int(1), ctx).unwrap_err();
        assert!(err.to_string().starts_with("divergent"));
        assert!(hurwitz_zeta(2, &rat(3, 2), ctx).is_err());
        assert!(hurwitz_zeta(2, &int(0), ctx).is_err());
    }

    #[test]
    fn doubled_precision_agrees() {
        for (s, x) in [(2u32, rat(1, 4)), (5, rat(2, 3)), (9, rat(1, 7))] {
            let lo = hurwitz_real(s, &x, 128).unwrap();
            let hi = hurwitz_real(s, &x, 256).unwrap();
            assert!(hi.with_prec(128).sub(&lo).contains_zero());
            assert!(hi.rad_f64() <= lo.rad_f64());
        }
    }

    #[test]
    fn scaled_batch_matches_single_values() {
        let x = rat(250, 3);
        let scaled = hurwitz_scaled_range(3, 40, &x, 160).unwrap();
        for (i, v) in scaled.iter().enumerate().step_by(9) {
            let s = 3 + i as u32;
            let direct = hurwitz_real(s, &x, 600).unwrap();
            let expect = direct.mul_rational(&rational::pow(&x, s as i64)).with_prec(160);
            assert!(v.sub(&expect).contains_zero(), "s = {s}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn shift_recurrence(s in 2u32..12, num in 1i64..30, den in 1i64..30) {
            // zeta(s, x) = x^-s + zeta(s, x + 1)
            let x = rat(num, den);
            let a = hurwitz_real(s, &x, 128).unwrap();
            let b = hurwitz_real(s, &(&x + int(1)), 128).unwrap();
            let head = Ball::from_rational(&rational::pow(&x, -(s as i64)), 128);
            prop_assert!(a.sub(&b).sub(&head).contains_zero());
        }
    }
}
