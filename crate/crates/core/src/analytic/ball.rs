//! Midpoint-radius fixed-point balls. A `Ball` at precision `p` stands for every
//! real in `[(mid - rad) 2^-p, (mid + rad) 2^-p]`, with `rad >= 0`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Working precision in bits; the target absolute error is `2^-bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    pub bits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_BITS: u32 = 256;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Precondition(format!(
                "precision must be at least 64 bits, got {bits}"
            )));
        }
        Ok(PrecisionContext { bits })
    }

    /// `log2` of the target absolute error.
    pub fn target_log2(&self) -> i64 {
        -(self.bits as i64)
    }

    pub fn with_extra(&self, extra: u32) -> Self {
        PrecisionContext {
            bits: self.bits + extra,
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: Self::DEFAULT_BITS,
        }
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `round(x / 2^s)`, ties away from minus infinity.
fn round_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + pow2(s - 1)) >> s as usize
}

/// `ceil(x / 2^s)` for `x >= 0`.
fn ceil_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    (x + pow2(s) - 1u32) >> s as usize
}

/// Nearest integer to `a / b`, `b != 0`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    (a * BigInt::from(2) + &b).div_floor(&(b * BigInt::from(2)))
}

/// `ceil(a / b)` for `a >= 0`, `b > 0`.
fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

impl Ball {
    pub fn new(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        Ball { mid, rad, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(k: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(k), prec)
    }

    pub fn from_bigint(k: &BigInt, prec: u32) -> Self {
        Self::new(k << prec as usize, BigInt::zero(), prec)
    }

    /// Nearest fixed-point value, with a one-ulp radius unless exact.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let scaled = q.numer() << prec as usize;
        let (quot, rem) = scaled.div_rem(q.denom());
        if rem.is_zero() {
            return Self::new(quot, BigInt::zero(), prec);
        }
        Self::new(div_round(&scaled, q.denom()), BigInt::one(), prec)
    }

    /// The ball `[-r, r]` for a nonnegative rational `r`, rounded outward.
    pub fn error_ball(r: &Rational, prec: u32) -> Self {
        let scaled = r.abs().numer() << prec as usize;
        Self::new(BigInt::zero(), div_ceil(&scaled, r.denom()), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_scaled(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_scaled(&self) -> &BigInt {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.prec, rhs.prec, "mixing balls of different precision");
    }

    /// Same ball at another precision, rounded outward when bits are dropped.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let s = (prec - self.prec) as usize;
            return Self::new(&self.mid << s, &self.rad << s, prec);
        }
        let s = self.prec - prec;
        let mid = round_shift(&self.mid, s);
        let exact_mid = (&mid << s as usize) == self.mid;
        let rad = ceil_shift(&self.rad, s) + if exact_mid { 0u32 } else { 1u32 };
        Self::new(mid, rad, prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::new(&self.mid + &rhs.mid, &self.rad + &rhs.rad, self.prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::new(&self.mid - &rhs.mid, &self.rad + &rhs.rad, self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.mid, self.rad.clone(), self.prec)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let p = self.prec;
        let prod = &self.mid * &rhs.mid;
        let mid = round_shift(&prod, p);
        let err = self.mid.abs() * &rhs.rad + rhs.mid.abs() * &self.rad + &self.rad * &rhs.rad;
        let exact_mid = (&mid << p as usize) == prod;
        let rad = ceil_shift(&err, p) + if exact_mid { 0u32 } else { 1u32 };
        Self::new(mid, rad, p)
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs);
        let m2 = rhs.mid.abs();
        if m2 <= rhs.rad {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec as usize;
        let mid = div_round(&(&self.mid << p), &rhs.mid);
        let num = (self.mid.abs() * &rhs.rad + &m2 * &self.rad) << p;
        let den = &m2 * (&m2 - &rhs.rad);
        let rad = div_ceil(&num, &den) + 1u32;
        Ok(Self::new(mid, rad, self.prec))
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(&self.mid * k, &self.rad * k.abs(), self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_int(&BigInt::from(k))
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division of a ball by zero");
        let (q, r) = self.mid.div_rem(k);
        let (mid, slack) = if r.is_zero() {
            (q, 0u32)
        } else {
            (div_round(&self.mid, k), 1u32)
        };
        let rad = div_ceil(&self.rad, &k.abs()) + slack;
        Self::new(mid, rad, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div_int(&BigInt::from(k))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Multiplication by `2^e`.
    pub fn mul_2exp(&self, e: i64) -> Self {
        if e >= 0 {
            return Self::new(&self.mid << e as usize, &self.rad << e as usize, self.prec);
        }
        let s = (-e) as u32;
        let mid = round_shift(&self.mid, s);
        let exact = (&mid << s as usize) == self.mid;
        Self::new(
            mid,
            ceil_shift(&self.rad, s) + if exact { 0u32 } else { 1u32 },
            self.prec,
        )
    }

    /// Widens the radius by `|err|` (midpoint ignored) plus its own radius.
    pub fn add_error(&self, err: &Self) -> Self {
        self.check(err);
        Self::new(
            self.mid.clone(),
            &self.rad + err.mid.abs() + &err.rad,
            self.prec,
        )
    }

    pub fn add_error_ulps(&self, ulps: u64) -> Self {
        Self::new(self.mid.clone(), &self.rad + ulps, self.prec)
    }

    /// Exact ball holding `|mid| + rad`, an upper bound for the absolute value.
    pub fn abs_upper(&self) -> Self {
        Self::new(self.mid.abs() + &self.rad, BigInt::zero(), self.prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        -&self.mid > self.rad
    }

    /// Whether every point of the ball has absolute value at most `bound`.
    pub fn abs_le(&self, bound: &Rational) -> bool {
        let lhs = (self.mid.abs() + &self.rad) * bound.denom();
        lhs <= bound.numer() << self.prec as usize
    }

    /// Whether the radius is at most `bound`.
    pub fn rad_le(&self, bound: &Rational) -> bool {
        &self.rad * bound.denom() <= bound.numer() << self.prec as usize
    }

    /// `floor(x)`, when it is the same for every point `x` of the ball.
    pub fn unique_floor(&self) -> Option<BigInt> {
        let lo = (&self.mid - &self.rad) >> self.prec as usize;
        let hi = (&self.mid + &self.rad) >> self.prec as usize;
        (lo == hi).then_some(lo)
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    pub fn rad_f64(&self) -> f64 {
        scaled_to_f64(&self.rad, self.prec)
    }

    /// Natural logarithm of the midpoint magnitude, for reports; `None` when the ball
    /// contains zero.
    pub fn ln_abs_f64(&self) -> Option<f64> {
        if self.contains_zero() {
            return None;
        }
        Some(ln_scaled(&self.mid, self.prec))
    }

    /// Decimal midpoint with every digit the precision supports.
    pub fn mid_decimal(&self) -> String {
        to_decimal(&self.mid, self.prec, Rounding::Nearest)
    }

    /// Decimal radius, rounded up.
    pub fn rad_decimal(&self) -> String {
        to_decimal(&self.rad, self.prec, Rounding::Up)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:.3e}]", self.to_f64(), self.rad_f64())
    }
}

fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - prec as i32)
}

fn ln_scaled(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift as usize).abs().to_f64().unwrap_or(0.0);
    top.ln() + (shift as f64 - prec as f64) * std::f64::consts::LN_2
}

enum Rounding {
    Nearest,
    Up,
}

fn to_decimal(x: &BigInt, prec: u32, rounding: Rounding) -> String {
    let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
    let scaled = x * BigInt::from(10u32).pow(digits as u32);
    let q = match rounding {
        Rounding::Nearest => round_shift(&scaled, prec),
        Rounding::Up => ceil_shift(&scaled.abs(), prec),
    };
    let negative = q.sign() == Sign::Minus;
    let mut s = q.abs().to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let (int_part, frac_part) = s.split_at(s.len() - digits);
    let frac = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

/// Rectangular complex ball.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        assert_eq!(re.prec, im.prec, "mixing balls of different precision");
        ComplexBall { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Ball::zero(prec), Ball::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(Ball::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Ball::zero(prec), Ball::one(prec))
    }

    pub fn from_real(re: Ball) -> Self {
        let prec = re.prec;
        Self::new(re, Ball::zero(prec))
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self::from_real(Ball::from_rational(q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Self::new(re, im)
    }

    pub fn mul_real(&self, x: &Ball) -> Self {
        Self::new(self.re.mul(x), self.im.mul(x))
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(self.re.mul_int(k), self.im.mul_int(k))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Self::new(self.re.mul_rational(q), self.im.mul_rational(q))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let norm = rhs.re.sqr().add(&rhs.im.sqr());
        let num = self.mul(&rhs.conj());
        Ok(Self::new(num.re.div(&norm)?, num.im.div(&norm)?))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// `rad_re + rad_im`, a bound on the distance from the midpoint to any point.
    pub fn rad(&self) -> Ball {
        Ball::new(
            self.re.rad.clone() + &self.im.rad,
            BigInt::zero(),
            self.prec(),
        )
    }

    pub fn rad_le(&self, bound: &Rational) -> bool {
        self.rad().abs_le(bound)
    }

    /// Natural logarithm of `|mid|` for reports; `None` when the ball contains zero.
    pub fn ln_abs_f64(&self) -> Option<f64> {
        if self.contains_zero() {
            return None;
        }
        let (a, b) = (self.re.mid.abs(), self.im.mid.abs());
        let big = if a > b { a.clone() } else { b.clone() };
        let shift = big.bits().saturating_sub(60) as usize;
        let x = (&a >> shift).to_f64().unwrap_or(0.0);
        let y = (&b >> shift).to_f64().unwrap_or(0.0);
        Some(x.hypot(y).ln() + (shift as f64 - self.prec() as f64) * std::f64::consts::LN_2)
    }

    pub fn to_value(&self) -> NumericValue {
        NumericValue {
            mid_re: self.re.mid_decimal(),
            mid_im: self.im.mid_decimal(),
            rad: self.rad().mid_decimal_up(),
        }
    }
}

impl Ball {
    fn mid_decimal_up(&self) -> String {
        to_decimal(&(self.mid.abs() + &self.rad), self.prec, Rounding::Up)
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

/// Serialized form of a complex ball: decimal strings at full working precision.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericValue {
    pub mid_re: String,
    pub mid_im: String,
    pub rad: String,
}

impl Serialize for ComplexBall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}
