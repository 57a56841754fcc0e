//! Integer utilities: lcm of an initial segment, factorials, Pochhammer symbols, sieving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::DensePoly;
use super::rational::Rational;

/// `lcm(1, 2, ..., m)`, with the empty lcm equal to 1.
pub fn lcm_upto(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)))
}

pub fn factorial(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc * j)
}

/// Rising factorial `(x)_p = x (x+1) ... (x+p-1)` of a rational.
pub fn pochhammer(x: &Rational, p: u64) -> Rational {
    let mut acc = Rational::one();
    let mut cur = x.clone();
    for _ in 0..p {
        acc *= &cur;
        cur += Rational::one();
    }
    acc
}

/// Rising factorial of a polynomial argument: `x(z) (x(z)+1) ... (x(z)+p-1)`.
pub fn pochhammer_poly(x: &DensePoly<Rational>, p: u64) -> DensePoly<Rational> {
    let mut acc = DensePoly::constant(Rational::one());
    let mut cur = x.clone();
    let one = DensePoly::constant(Rational::one());
    for _ in 0..p {
        acc = acc.mul(&cur);
        cur = cur.add(&one);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-m+1)` of an integer argument.
pub fn falling(x: i64, m: usize) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_upto(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Sorted divisors of a positive integer.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_upto(0), BigInt::from(1));
        assert_eq!(lcm_upto(1), BigInt::from(1));
        // fold of lcm over 1..6: 1, 2, 6, 12, 60, 60
        assert_eq!(lcm_upto(6), BigInt::from(60));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(1), 5), int(120));
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1));
        // (t-1)_4 = (t-1) t (t+1) (t+2) = t^4 + 2t^3 - t^2 - 2t
        let t_minus_1 = DensePoly::new(vec![int(-1), int(1)]);
        let expected = DensePoly::new(vec![int(0), int(-2), int(-1), int(2), int(1)]);
        assert_eq!(pochhammer_poly(&t_minus_1, 4), expected);
        let t = DensePoly::new(vec![int(0), int(1)]);
        assert_eq!(pochhammer_poly(&t, 0), DensePoly::constant(int(1)));
    }

    #[test]
    fn sieve_and_divisors() {
        assert_eq!(primes_upto(1), Vec::<u64>::new());
        assert_eq!(primes_upto(13), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }

    proptest! {
        #[test]
        fn lcm_divisibility(m in 0u64..40) {
            let d = lcm_upto(m);
            for j in 1..=m {
                prop_assert!(d.is_multiple_of(&BigInt::from(j)));
            }
            prop_assert!(lcm_upto(m + 1).is_multiple_of(&d));
        }

        #[test]
        fn pochhammer_matches_factorial_ratio(k in 1u64..=8, p in 0u64..=8) {
            let t = DensePoly::new(vec![int(0), int(1)]);
            let value = pochhammer_poly(&t, p).eval(&int(k as i64));
            // brute-force product k (k+1) ... (k+p-1)
            let brute: u64 = (k..k + p).product();
            prop_assert_eq!(value, int(brute as i64));
            prop_assert_eq!(
                Rational::from_integer(factorial(k + p - 1)) / Rational::from_integer(factorial(k - 1)),
                int(brute as i64)
            );
        }
    }
}
