//! Constants and elementary functions on balls: pi, log, exp, sin/cos and roots of unity.
//!
//! Each function works with a few guard bits and rounds back to the requested
//! precision; series remainders are added to the radius.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::ball::{Ball, ComplexBall};
use crate::error::{Error, Result};
use crate::exact::{CycloNumber, Rational};

const GUARD: u32 = 24;

/// `|x| <= 2^(-p) * ulps` in scaled units.
fn negligible(x: &Ball, ulps: u32) -> bool {
    x.abs_upper().mid_scaled() <= &BigInt::from(ulps)
}

/// `atan(1/q)` by its alternating Taylor series.
fn atan_inv(q: i64, p: u32) -> Ball {
    let q2 = BigInt::from(q * q);
    let mut pw = Ball::one(p).div_i64(q);
    let mut acc = Ball::zero(p);
    let mut k: i64 = 0;
    while !negligible(&pw, 1) {
        let term = pw.div_i64(2 * k + 1);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        pw = pw.div_int(&q2);
        k += 1;
    }
    acc.add_error(&pw)
}

fn cached(cache: &'static OnceLock<Mutex<HashMap<u32, Ball>>>, prec: u32, f: impl FnOnce(u32) -> Ball) -> Ball {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = map.lock().expect("constant cache").get(&prec) {
        return b.clone();
    }
    let b = f(prec);
    map.lock().expect("constant cache").insert(prec, b.clone());
    b
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Ball {
    static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let p = prec + GUARD;
        atan_inv(5, p)
            .mul_i64(16)
            .sub(&atan_inv(239, p).mul_i64(4))
            .with_prec(prec)
    })
}

/// `atanh(z) = sum z^(2k+1)/(2k+1)` for `|z| <= 1/2`; the tail is at most twice the
/// first omitted power.
fn atanh_small(z: &Ball) -> Ball {
    let p = z.prec();
    let z2 = z.sqr();
    let mut pw = z.clone();
    let mut acc = Ball::zero(p);
    let mut k: i64 = 0;
    while !negligible(&pw, 1) {
        acc = acc.add(&pw.div_i64(2 * k + 1));
        pw = pw.mul(&z2);
        k += 1;
    }
    acc.add_error(&pw.mul_i64(2))
}

/// `log 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Ball {
    static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let p = prec + GUARD;
        atanh_small(&Ball::one(p).div_i64(3))
            .mul_i64(2)
            .with_prec(prec)
    })
}

/// Natural logarithm of a positive ball.
pub fn log(x: &Ball) -> Result<Ball> {
    if !x.is_positive() {
        return Err(Error::Precondition("logarithm of a non-positive ball".into()));
    }
    let prec = x.prec();
    let p = prec + GUARD;
    let y = x.with_prec(p);
    // y = 2^e u with u in [1/2, 1]
    let e = y.mid_scaled().bits() as i64 - p as i64;
    let u = y.mul_2exp(-e);
    let one = Ball::one(p);
    let z = u.sub(&one).div(&u.add(&one))?;
    let l = atanh_small(&z).mul_i64(2).add(&ln2(p).mul_i64(e));
    Ok(l.with_prec(prec))
}

pub fn log_int(k: &BigInt, prec: u32) -> Result<Ball> {
    log(&Ball::from_bigint(k, prec + GUARD)).map(|b| b.with_prec(prec))
}

pub fn log_rational(q: &Rational, prec: u32) -> Result<Ball> {
    log(&Ball::from_rational(q, prec + GUARD)).map(|b| b.with_prec(prec))
}

/// `exp(x)` via `exp(x 2^-s)^(2^s)` with `|x 2^-s| <= 1/2`.
pub fn exp(x: &Ball) -> Ball {
    let prec = x.prec();
    let int_bits = x.abs_upper().mid_scaled().bits() as i64 - prec as i64;
    let s = (int_bits + 2).max(0) as u32;
    let p = prec + GUARD + s;
    let y = x.with_prec(p).mul_2exp(-(s as i64));
    let mut term = Ball::one(p);
    let mut acc = Ball::zero(p);
    let mut k: i64 = 1;
    while !negligible(&term, 1) {
        acc = acc.add(&term);
        term = term.mul(&y).div_i64(k);
        k += 1;
    }
    let mut r = acc.add_error(&term.mul_i64(2));
    for _ in 0..s {
        r = r.sqr();
    }
    r.with_prec(prec)
}

/// `(sin x, cos x)` for `|x| <= 4`.
pub fn sin_cos(x: &Ball) -> Result<(Ball, Ball)> {
    let prec = x.prec();
    if !x.abs_le(&Rational::from_integer(4.into())) {
        return Err(Error::Precondition("sin_cos argument must satisfy |x| <= 4".into()));
    }
    let p = prec + GUARD;
    let y = x.with_prec(p);
    let mut term = Ball::one(p);
    let (mut s, mut c) = (Ball::zero(p), Ball::zero(p));
    let mut k: i64 = 0;
    // terms decrease once k > 4, so the first omitted term bounds both tails
    while k < 6 || !negligible(&term, 1) {
        match k % 4 {
            0 => c = c.add(&term),
            1 => s = s.add(&term),
            2 => c = c.sub(&term),
            _ => s = s.sub(&term),
        }
        k += 1;
        term = term.mul(&y).div_i64(k);
    }
    Ok((
        s.add_error(&term).with_prec(prec),
        c.add_error(&term).with_prec(prec),
    ))
}

/// `e^(2 i pi k / n)`, exact at the points `1, i, -1, -i`.
pub fn root_of_unity(k: i64, n: u64, prec: u32) -> ComplexBall {
    let n = n as i64;
    let k = k.rem_euclid(n);
    if k == 0 {
        return ComplexBall::one(prec);
    }
    if 2 * k == n {
        return ComplexBall::one(prec).neg();
    }
    if 4 * k == n {
        return ComplexBall::i(prec);
    }
    if 4 * k == 3 * n {
        return ComplexBall::i(prec).neg();
    }
    let centered = if 2 * k > n { k - n } else { k };
    let p = prec + GUARD;
    let theta = pi(p).mul_i64(2 * centered).div_i64(n);
    let (s, c) = sin_cos(&theta).expect("|theta| <= pi");
    ComplexBall::new(c.with_prec(prec), s.with_prec(prec))
}

/// The powers `e^(2 i pi k/n)`, `k = 0..n-1`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: u64,
    roots: Vec<ComplexBall>,
}

impl RootTable {
    pub fn new(n: u64, prec: u32) -> Self {
        RootTable {
            n,
            roots: (0..n as i64).map(|k| root_of_unity(k, n, prec)).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: i64) -> &ComplexBall {
        &self.roots[k.rem_euclid(self.n as i64) as usize]
    }

    /// Image of a cyclotomic number of this order under `zeta -> e^(2 i pi/n)`.
    pub fn embed(&self, xi: &CycloNumber) -> ComplexBall {
        assert_eq!(xi.field().order(), self.n, "embedding table of the wrong order");
        let prec = self.roots[0].prec();
        let mut acc = ComplexBall::zero(prec);
        for (e, c) in xi.representative().coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            acc = acc.add(&self.get(e as i64).mul_rational(c));
        }
        acc
    }
}

/// Complex value of a cyclotomic number under the standard embedding.
pub fn embed_cyclo(xi: &CycloNumber, prec: u32) -> ComplexBall {
    RootTable::new(xi.field().order(), prec).embed(xi)
}
