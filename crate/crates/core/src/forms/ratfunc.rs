//! The rational function `F(t)` in factored form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::params::Params;
use crate::error::{Error, Result};
use crate::exact::integer::factorial;
use crate::exact::rational::{self, int, Rational};

/// `scalar * prod (t - rho)^mu / prod (t - sigma)^nu` with no root shared by the
/// numerator and the denominator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactoredRationalFunction {
    #[serde(with = "rational::serde_str")]
    pub scalar: Rational,
    #[serde(serialize_with = "serialize_roots")]
    pub numerator_roots: Vec<(Rational, u32)>,
    #[serde(serialize_with = "serialize_roots")]
    pub denominator_roots: Vec<(Rational, u32)>,
}

fn serialize_roots<S: serde::Serializer>(
    roots: &[(Rational, u32)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(roots.len()))?;
    for (root, mult) in roots {
        seq.serialize_element(&(rational::to_string(root), mult))?;
    }
    seq.end()
}

impl FactoredRationalFunction {
    /// Builds the reduced form, cancelling roots common to both sides.
    pub fn new(
        scalar: Rational,
        numerator: impl IntoIterator<Item = (Rational, u32)>,
        denominator: impl IntoIterator<Item = (Rational, u32)>,
    ) -> Self {
        let mut balance: BTreeMap<Rational, i64> = BTreeMap::new();
        for (root, mult) in numerator {
            *balance.entry(root).or_default() += mult as i64;
        }
        for (root, mult) in denominator {
            *balance.entry(root).or_default() -= mult as i64;
        }
        let numerator_roots = balance
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(r, &e)| (r.clone(), e as u32))
            .collect();
        let denominator_roots = balance
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(r, &e)| (r.clone(), (-e) as u32))
            .collect();
        FactoredRationalFunction {
            scalar,
            numerator_roots,
            denominator_roots,
        }
    }

    pub fn numerator_degree(&self) -> i64 {
        self.numerator_roots.iter().map(|(_, m)| *m as i64).sum()
    }

    pub fn denominator_degree(&self) -> i64 {
        self.denominator_roots.iter().map(|(_, m)| *m as i64).sum()
    }

    pub fn degree(&self) -> i64 {
        self.numerator_degree() - self.denominator_degree()
    }

    pub fn is_pole(&self, t: &Rational) -> bool {
        self.denominator_roots.iter().any(|(r, _)| r == t)
    }

    /// Exact value; errors at a pole.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let mut num = self.scalar.clone();
        for (root, mult) in &self.numerator_roots {
            num *= rational::pow(&(t - root), *mult as i64);
        }
        if num.is_zero() {
            return Ok(num);
        }
        let mut den = Rational::one();
        for (root, mult) in &self.denominator_roots {
            let d = t - root;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den *= rational::pow(&d, *mult as i64);
        }
        Ok(num / den)
    }

    /// Value at an integer argument; the integer must not be a pole.
    pub fn eval_int(&self, t: i64) -> Result<Rational> {
        self.eval(&int(t))
    }

    /// `lim_{t -> root} (t - root)^mult F(t)` for a denominator root of multiplicity `mult`.
    pub fn leading_pole_coefficient(&self, root: &Rational) -> Result<Rational> {
        let mut acc = self.scalar.clone();
        let mut found = false;
        for (r, mult) in &self.numerator_roots {
            acc *= rational::pow(&(root - r), *mult as i64);
        }
        for (r, mult) in &self.denominator_roots {
            if r == root {
                found = true;
            } else {
                acc /= rational::pow(&(root - r), *mult as i64);
            }
        }
        if !found {
            return Err(Error::Precondition(format!(
                "{} is not a pole",
                rational::to_string(root)
            )));
        }
        Ok(acc)
    }
}

/// `F(t) = m!^{(a+1)-(2r+1)N} (t-rn)_{(2r+1)n+1} / prod_{h=0}^{m} (t+Nh)^{a+1}`, `m = n/N`.
pub fn build_f(params: &Params) -> FactoredRationalFunction {
    let (a, r, nn, n) = (
        params.a as i64,
        params.r as i64,
        params.big_n as i64,
        params.n as i64,
    );
    let m = params.m() as i64;
    let exponent = (a + 1) - (2 * r + 1) * nn;
    let scalar = rational::pow(&rational::from_bigint(factorial(m as u64)), exponent);
    // (t - rn)_{(2r+1)n+1} = prod_{x=-rn}^{(r+1)n} (t + x)
    let numerator = (-r * n..=(r + 1) * n).map(|x| (int(-x), 1));
    let denominator = (0..=m).map(|h| (int(-nn * h), (a + 1) as u32));
    FactoredRationalFunction::new(scalar, numerator, denominator)
}

/// Checks `F(-n-t) = (-1)^p F(t)` by exact evaluation at enough half-integer points
/// to decide the polynomial identity obtained by clearing denominators.
pub fn check_well_poised_symmetry(f: &FactoredRationalFunction, params: &Params) -> Result<bool> {
    if !params.n.is_multiple_of(2 * params.big_n) {
        return Err(Error::Precondition("2N | n".into()));
    }
    if params.p as u64 % 2 != params.a % 2 {
        return Err(Error::Precondition("p \u{2261} a (mod 2)".into()));
    }
    let n = int(params.n as i64);
    let by_degree = (f.numerator_degree() + f.denominator_degree() + 1) as usize;
    let stated = (params.d0() + (2 * params.r as i64 + 1) * params.n as i64 + 2) as usize;
    let sign = if params.p == 0 { int(1) } else { int(-1) };
    let half = rational::rat(1, 2);
    let mut t = half.clone();
    let mut tested = 0;
    while tested < by_degree.max(stated) {
        let reflected = -&n - &t;
        if !f.is_pole(&t) && !f.is_pole(&reflected) {
            if f.eval(&reflected)? != &sign * f.eval(&t)? {
                return Ok(false);
            }
            tested += 1;
        }
        t += int(1);
    }
    Ok(true)
}
