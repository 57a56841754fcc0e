//! Dirichlet series `L(f, s)` of periodic functions and polylogarithms at roots of unity.

use super::ball::{Ball, ComplexBall, PrecisionContext};
use super::elementary::{log, pi, sin_cos, RootTable};
use super::hurwitz::hurwitz_real;
use crate::error::{Error, Result};
use crate::exact::rational::{self, rat};
use crate::forms::PeriodicFunction;

/// `L(f, s) = sum_{u=1}^{T} f(u) T^-s zeta(s, u/T)`.
pub fn l_value_prec(f: &PeriodicFunction, s: u32, prec: u32) -> Result<ComplexBall> {
    let t = f.period() as i64;
    let roots = RootTable::new(f.field().order(), prec);
    let scale = rational::pow(&rat(1, t), s as i64);
    let mut acc = ComplexBall::zero(prec);
    for u in 1..=t {
        let fu = f.value(u);
        if fu.representative().is_zero() {
            continue;
        }
        let z = hurwitz_real(s, &rat(u, t), prec)?.mul_rational(&scale);
        acc = acc.add(&roots.embed(fu).mul_real(&z));
    }
    Ok(acc)
}

pub fn l_value(f: &PeriodicFunction, s: i64, ctx: PrecisionContext) -> Result<ComplexBall> {
    if s < 2 {
        return Err(Error::Precondition(format!("L(f, s) is evaluated for s >= 2, got {s}")));
    }
    l_value_prec(f, s as u32, ctx.bits)
}

/// A point `e^(2 i pi m/n)` of the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitRoot {
    pub m: i64,
    pub n: u64,
}

impl UnitRoot {
    pub fn new(m: i64, n: u64) -> Self {
        UnitRoot {
            m: m.rem_euclid(n as i64),
            n,
        }
    }

    pub fn is_one(&self) -> bool {
        self.m == 0
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.m, self.n)
    }
}

/// `Li_j(e^(2 i pi m/n))`. For `j >= 2` this is
/// `sum_{c=1}^{n} e^(2 i pi m c/n) n^-j zeta(j, c/n)`; for `j = 1` it is the closed form
/// `-log(2 sin(theta/2)) + i (pi - theta)/2`, `theta = 2 pi m/n in (0, 2 pi)`.
pub fn polylog_root_prec(j: u32, z: UnitRoot, prec: u32) -> Result<ComplexBall> {
    if j == 0 {
        return Err(Error::Precondition("polylogarithm order must be at least 1".into()));
    }
    if j == 1 {
        if z.is_one() {
            return Err(Error::Divergent("Li_1(1) is the harmonic series".into()));
        }
        let p = prec + 16;
        let half_theta = pi(p).mul_i64(z.m).div_i64(z.n as i64);
        // theta/2 in (0, pi): use sin(theta/2) = sin(pi - theta/2) to stay in |x| <= 4
        let reduced = if 2 * z.m > z.n as i64 {
            pi(p).sub(&half_theta)
        } else {
            half_theta.clone()
        };
        let (s, _) = sin_cos(&reduced)?;
        let re = log(&s.mul_i64(2))?.neg();
        let im = pi(p).sub(&half_theta.mul_i64(2)).div_i64(2);
        return Ok(ComplexBall::new(re, im).with_prec(prec));
    }
    let n = z.n as i64;
    let roots = RootTable::new(z.n, prec);
    let scale = rational::pow(&rat(1, n), j as i64);
    let mut acc = ComplexBall::zero(prec);
    for c in 1..=n {
        let h: Ball = hurwitz_real(j, &rat(c, n), prec)?.mul_rational(&scale);
        acc = acc.add(&roots.get(z.m * c).mul_real(&h));
    }
    Ok(acc)
}

pub fn eval_polylog(j: i64, z: UnitRoot, ctx: PrecisionContext) -> Result<ComplexBall> {
    if j < 1 {
        return Err(Error::Precondition(format!("polylogarithm order {j} < 1")));
    }
    polylog_root_prec(j as u32, z, ctx.bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::elementary::ln2;
    use crate::analytic::hurwitz::hurwitz_real;
    use crate::exact::rational::int;

    const CATALAN_40: &str = "0.9159655941772190150546035149323841107741";

    /// Catalan's constant from `sum (-1)^k/(2k+1)^2`, pairing terms and bounding
    /// the tail by the first omitted term.
    fn catalan_oracle(prec: u32) -> Ball {
        let terms = 20_000i64;
        let mut acc = Ball::zero(prec);
        for k in 0..terms {
            let t = Ball::one(prec).div_i64((2 * k + 1) * (2 * k + 1));
            acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        let omitted = Ball::one(prec).div_i64((2 * terms + 1) * (2 * terms + 1));
        acc.add_error(&omitted)
    }

    /// `Li_j(z)` from the plain series with the Abel bound `2/(|1 - z| M^j)` on the tail.
    fn polylog_direct(j: u32, z: UnitRoot, prec: u32, terms: i64) -> ComplexBall {
        let roots = RootTable::new(z.n, prec);
        let mut acc = ComplexBall::zero(prec);
        for m in 1..=terms {
            let w = Ball::one(prec).div_int(&num_bigint::BigInt::from(m).pow(j));
            acc = acc.add(&roots.get(z.m * m).mul_real(&w));
        }
        let one_minus = ComplexBall::one(prec).sub(roots.get(z.m));
        let dist_sq_lower = one_minus.re.sqr().add(&one_minus.im.sqr());
        // |1 - z| >= |1 - z|^2 / 2 on the unit circle
        let bound = Ball::from_int(4, prec)
            .div(&dist_sq_lower)
            .unwrap()
            .div_int(&num_bigint::BigInt::from(terms + 1).pow(j));
        ComplexBall::new(acc.re.add_error(&bound), acc.im.add_error(&bound))
    }

    #[test]
    fn constant_function_gives_riemann_zeta() {
        let ctx = PrecisionContext::default();
        let one = PeriodicFunction::from_ints(&[1]).unwrap();
        let z2 = hurwitz_real(2, &int(1), 256).unwrap();
        assert!(l_value(&one, 2, ctx).unwrap().re.sub(&z2).contains_zero());
    }

    #[test]
    fn catalan_constant() {
        let chi = PeriodicFunction::from_ints(&[0, 1, 0, -1]).unwrap();
        let l = l_value(&chi, 2, PrecisionContext::default()).unwrap();
        assert!(l.re.mid_decimal().starts_with(&CATALAN_40[..40]));
        let oracle = catalan_oracle(128);
        assert!(l.re.with_prec(128).sub(&oracle).contains_zero());
        assert!(l.im.contains_zero());
    }

    #[test]
    fn alternating_function_halves_zeta2() {
        let f = PeriodicFunction::from_ints(&[-1, 1]).unwrap();
        let l = l_value(&f, 2, PrecisionContext::default()).unwrap();
        let half = hurwitz_real(2, &int(1), 256).unwrap().div_i64(2);
        assert!(l.re.sub(&half).contains_zero());
    }

    #[test]
    fn indicator_mod_four_is_scaled_hurwitz() {
        let f = PeriodicFunction::indicator(1, 4).unwrap();
        let l = l_value_prec(&f, 2, 200).unwrap();
        let h = hurwitz_real(2, &rat(1, 4), 200).unwrap().div_i64(16);
        assert!(l.re.sub(&h).contains_zero());
    }

    #[test]
    fn polylog_special_values() {
        let ctx = PrecisionContext::default();
        let li2 = eval_polylog(2, UnitRoot::new(0, 1), ctx).unwrap();
        let z2 = hurwitz_real(2, &int(1), 256).unwrap();
        assert!(li2.re.sub(&z2).contains_zero());
        let li1 = eval_polylog(1, UnitRoot::new(1, 2), ctx).unwrap();
        assert!(li1.re.add(&ln2(256)).contains_zero());
        assert!(li1.im.contains_zero());
        let err = eval_polylog(1, UnitRoot::new(0, 3), ctx).unwrap_err();
        assert!(err.to_string().starts_with("divergent"));
    }

    #[test]
    fn li3_at_i_agrees_with_direct_series() {
        let z = UnitRoot::new(1, 4);
        let fast = polylog_root_prec(3, z, 96).unwrap();
        let slow = polylog_direct(3, z, 96, 3000);
        assert!(fast.sub(&slow).contains_zero());
        // Li_3(i) = -3/32 zeta(3) + i beta(3), beta(3) = pi^3/32
        let beta3 = pi(96).pow(3).div_i64(32);
        assert!(fast.im.sub(&beta3).contains_zero());
    }

    #[test]
    fn li1_closed_form_matches_abel_sum() {
        let z = UnitRoot::new(2, 5);
        let closed = polylog_root_prec(1, z, 64).unwrap();
        let slow = polylog_direct(1, z, 64, 4000);
        assert!(closed.sub(&slow).contains_zero());
    }
}
