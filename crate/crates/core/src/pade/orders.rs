//! Vanishing orders of the three remainder families at `0`, `infinity` and the roots of unity.

use num_traits::Zero;

use crate::error::Result;
use crate::exact::integer::factorial;
use crate::exact::poly::DensePoly;
use crate::exact::rational::{self, Rational};
use crate::exact::series::{series_log_at_one, TruncatedSeries};
use crate::forms::{FactoredRationalFunction, Params};

/// `F(-t) = 0` for `n < t <= (r+1)n`, which gives `R_0 = O(z^{(r+1)n+1})`.
pub fn check_order_at_zero(f: &FactoredRationalFunction, params: &Params) -> Result<bool> {
    let (n, r) = (params.n as i64, params.r as i64);
    for t in n + 1..=(r + 1) * n {
        if !f.eval_int(-t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F(t) = 0` for `1 <= t <= rn`, which gives `R_infinity = O(z^{-rn-1})`.
pub fn check_order_at_infinity(f: &FactoredRationalFunction, params: &Params) -> Result<bool> {
    let (n, r) = (params.n as i64, params.r as i64);
    for t in 1..=r * n {
        if !f.eval_int(t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients of `w^0 .. w^{order-1}` in
/// `sum_j P_j(1+w) (-1)^{j-1} log(1+w)^{j-1} / (j-1)!`.
pub fn unity_expansion(polys: &[DensePoly<Rational>], order: usize) -> TruncatedSeries {
    let shift = DensePoly::new(vec![rational::int(1), rational::int(1)]);
    let log = series_log_at_one(order);
    let mut log_power = TruncatedSeries::one(order);
    let mut acc = TruncatedSeries::zero(order);
    for (idx, p) in polys.iter().enumerate() {
        let j = idx + 1;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let weight = rational::from_bigint(factorial(j as u64 - 1)).recip() * rational::int(sign);
        let local = TruncatedSeries::from_poly(&p.compose(&shift), order);
        acc = acc.add(&local.mul(&log_power).scale(&weight));
        log_power = log_power.mul(&log);
    }
    acc
}

/// The expansion at `z = 1` vanishes to order `d_0 - 1`; by `P_j(omega z) = P_j(z)` this
/// covers every `N`-th root of unity.
pub fn check_order_at_unity(polys: &[DensePoly<Rational>], d0: i64) -> bool {
    if d0 < 2 {
        return false;
    }
    unity_expansion(polys, d0 as usize - 1).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{build_f, partial_fractions_product};
    use crate::exact::rational::int;

    #[test]
    fn orders_on_small_instances() {
        for (a, r, nn, n, relaxed) in [(4, 1, 1, 2, false), (7, 2, 2, 2, true), (7, 1, 2, 4, false)] {
            let p = if relaxed {
                Params::relaxed(a, r, nn, n, 0, nn).unwrap()
            } else {
                Params::new(a, r, nn, n, 0, nn).unwrap()
            };
            let f = build_f(&p);
            assert!(check_order_at_zero(&f, &p).unwrap());
            assert!(check_order_at_infinity(&f, &p).unwrap());
        }
    }

    fn shifted(p: &Params, shift: i64) -> FactoredRationalFunction {
        // numerator (t - rn + shift)_{(2r+1)n+1}
        let f = build_f(p);
        let (r, n) = (p.r as i64, p.n as i64);
        FactoredRationalFunction::new(
            f.scalar.clone(),
            (-r * n + shift..=(r + 1) * n + shift).map(|x| (int(-x), 1)),
            (0..=p.m() as i64).map(|h| (int(-h * p.big_n as i64), p.a as u32 + 1)),
        )
    }

    #[test]
    fn shifted_numerator_breaks_the_window() {
        let p = Params::new(4, 1, 1, 2, 0, 1).unwrap();
        assert_eq!(shifted(&p, 0), build_f(&p));
        // a shift by +1 keeps the window at 0 but loses the zero at t = rn
        let up = shifted(&p, 1);
        assert!(check_order_at_zero(&up, &p).unwrap());
        assert!(!check_order_at_infinity(&up, &p).unwrap());
        // a shift by -1 loses the zero at t = -(r+1)n
        let down = shifted(&p, -1);
        assert!(!check_order_at_zero(&down, &p).unwrap());
        assert!(check_order_at_infinity(&down, &p).unwrap());
    }

    #[test]
    fn unity_order_exact() {
        for (n, d0) in [(1u64, 6i64), (2, 8)] {
            let p = Params::new(4, 1, 1, n, 0, 1).unwrap();
            assert_eq!(p.d0(), d0);
            let polys = partial_fractions_product(&p).unwrap().polynomials();
            assert!(check_order_at_unity(&polys, d0));
        }
    }

    #[test]
    fn random_family_fails_unity_order() {
        let polys = vec![
            DensePoly::from_ints(&[3, 0, -1]),
            DensePoly::from_ints(&[1, 5]),
            DensePoly::from_ints(&[-2, 0, 0, 7]),
        ];
        assert!(!check_order_at_unity(&polys, 6));
    }
}
