//! Partial-fraction tables `F(t) = sum_{h,j} p_{j,h} / (t + Nh)^j` and the
//! algorithms that compute them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::params::Params;
use super::ratfunc::FactoredRationalFunction;
use crate::error::{Error, Result};
use crate::exact::integer::{factorial, lcm_upto};
use crate::exact::linalg;
use crate::exact::poly::DensePoly;
use crate::exact::rational::{self, int, Rational};

/// `entries[j-1][h] = p_{j,h}` for `1 <= j <= a`, `0 <= h <= n/N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialFractionTable {
    pub a: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    #[serde(serialize_with = "serialize_table")]
    pub entries: Vec<Vec<Rational>>,
}

fn serialize_table<S: serde::Serializer>(
    rows: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(rational::to_string).collect())
        .collect();
    strs.serialize(s)
}

impl PartialFractionTable {
    pub fn zeros(a: usize, m: usize, big_n: u64) -> Self {
        PartialFractionTable {
            a,
            m,
            big_n,
            entries: vec![vec![Rational::zero(); m + 1]; a],
        }
    }

    pub fn get(&self, j: usize, h: usize) -> &Rational {
        &self.entries[j - 1][h]
    }

    pub fn set(&mut self, j: usize, h: usize, value: Rational) {
        self.entries[j - 1][h] = value;
    }

    /// `sum_{j,h} p_{j,h} / (t + Nh)^j`.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for h in 0..=self.m {
            let base = t + int((self.big_n * h as u64) as i64);
            if base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let inv = base.recip();
            let mut pw = inv.clone();
            for j in 1..=self.a {
                acc += self.get(j, h) * &pw;
                pw *= &inv;
            }
        }
        Ok(acc)
    }

    /// `P_j(z) = sum_h p_{j,h} z^{Nh}` as dense polynomials, `j = 1..a`.
    pub fn polynomials(&self) -> Vec<DensePoly<Rational>> {
        (1..=self.a)
            .map(|j| {
                let mut c = vec![Rational::zero(); self.m * self.big_n as usize + 1];
                for h in 0..=self.m {
                    c[h * self.big_n as usize] = self.get(j, h).clone();
                }
                DensePoly::new(c)
            })
            .collect()
    }
}

/// A method for expanding `F` into partial fractions.
pub trait PartialFractionStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, f: &FactoredRationalFunction, params: &Params) -> Result<PartialFractionTable>;
}

/// Registered strategies, in a fixed order.
pub fn strategies() -> Vec<Box<dyn PartialFractionStrategy>> {
    vec![Box::new(ProductMethod), Box::new(SolveMethod::default())]
}

pub fn strategy(name: &str) -> Result<Box<dyn PartialFractionStrategy>> {
    strategies()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "partial-fraction strategy",
            name: name.to_string(),
        })
}

pub fn partial_fractions_product(params: &Params) -> Result<PartialFractionTable> {
    ProductMethod.compute(&super::ratfunc::build_f(params), params)
}

pub fn partial_fractions_solve(
    f: &FactoredRationalFunction,
    params: &Params,
) -> Result<PartialFractionTable> {
    SolveMethod::default().compute(f, params)
}

/// Sum of a polynomial part and pole terms `poles[h][j-1] / (t + Nh)^j`.
#[derive(Clone, Debug)]
struct Expansion {
    big_n: i64,
    poly: DensePoly<Rational>,
    poles: Vec<Vec<Rational>>,
}

impl Expansion {
    fn polynomial(poly: DensePoly<Rational>, m: usize, max_order: usize, big_n: i64) -> Self {
        Expansion {
            big_n,
            poly,
            poles: vec![vec![Rational::zero(); max_order]; m + 1],
        }
    }

    /// Multiply by `sum_h c_h / (t + Nh)`.
    fn times_simple(&self, c: &[Rational]) -> Result<Self> {
        let m = self.poles.len() - 1;
        let max_order = self.poles[0].len();
        let mut out = Expansion::polynomial(DensePoly::zero(), m, max_order, self.big_n);
        // powers[d][i] = 1/(N d)^i for d = h' - h != 0
        let pow_inv = |d: i64, e: usize| -> Rational {
            rational::pow(&int(self.big_n * d), -(e as i64))
        };
        for (h2, ch2) in c.iter().enumerate() {
            if ch2.is_zero() {
                continue;
            }
            // polynomial part: P(t)/(t + A) = Q(t) + P(-A)/(t + A)
            if !self.poly.is_zero() {
                let shift = int(self.big_n * h2 as i64);
                let divisor = DensePoly::new(vec![shift.clone(), Rational::one()]);
                let (q, rem) = self.poly.div_rem(&divisor)?;
                out.poly = out.poly.add(&q.scale(ch2));
                let r0 = rem.coeff(0).cloned().unwrap_or_else(Rational::zero);
                out.add_pole(h2, 1, &(r0 * ch2))?;
            }
            for (h, row) in self.poles.iter().enumerate() {
                for (idx, coeff) in row.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let ell = idx + 1;
                    let w = coeff * ch2;
                    if h == h2 {
                        out.add_pole(h, ell + 1, &w)?;
                        continue;
                    }
                    // 1/((t+A)(t+B)^l) = 1/((B-A)^l (t+A)) - sum_i 1/((B-A)^{l+1-i} (t+B)^i)
                    // with A = N h2, B = N h
                    let d = h as i64 - h2 as i64;
                    out.add_pole(h2, 1, &(&w * pow_inv(d, ell)))?;
                    for i in 1..=ell {
                        out.add_pole(h, i, &(-(&w * pow_inv(d, ell + 1 - i))))?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn add_pole(&mut self, h: usize, j: usize, v: &Rational) -> Result<()> {
        let slot = self.poles[h]
            .get_mut(j - 1)
            .ok_or_else(|| Error::Internal(format!("pole order {j} exceeds the bound")))?;
        *slot += v;
        Ok(())
    }
}

/// Residues of `Q(t) / prod_{h=0}^m (t + Nh)`: `Q(-Nh) / prod_{h' != h} N (h' - h)`.
fn simple_residues(q: &DensePoly<Rational>, m: usize, big_n: i64) -> Vec<Rational> {
    (0..=m as i64)
        .map(|h| {
            let mut den = Rational::one();
            for h2 in 0..=m as i64 {
                if h2 != h {
                    den *= int(big_n * (h2 - h));
                }
            }
            q.eval(&int(-big_n * h)) / den
        })
        .collect()
}

/// Multiplies the simple-pole expansions of
/// `F_0 = m!/prod(t+Nh)`, `G_i = (t - i m)_m / prod(t+Nh)` and
/// `H_i = (t + 1 + i m)_m / prod(t+Nh)` together with the factor `t`, following
/// `F = F_0^{a+1-(2r+1)N} t G_1 ... G_{rN} H_0 ... H_{(r+1)N-1}`.
pub struct ProductMethod;

impl PartialFractionStrategy for ProductMethod {
    fn name(&self) -> &'static str {
        "product"
    }

    fn compute(&self, _f: &FactoredRationalFunction, params: &Params) -> Result<PartialFractionTable> {
        let (a, r, nn) = (params.a as i64, params.r as i64, params.big_n as i64);
        let m = params.m() as usize;
        let e0 = (a + 1) - (2 * r + 1) * nn;
        if e0 < 0 {
            return Err(Error::Precondition(format!(
                "product method needs a + 1 \u{2265} (2r+1)N (exponent of F_0 is {e0})"
            )));
        }
        let t = DensePoly::new(vec![Rational::zero(), Rational::one()]);
        let rising = |start: i64| -> DensePoly<Rational> {
            (0..m as i64).fold(DensePoly::constant(Rational::one()), |acc, i| {
                acc.mul(&DensePoly::new(vec![int(start + i), Rational::one()]))
            })
        };
        let mut factors: Vec<Vec<Rational>> = Vec::new();
        let f0 = simple_residues(
            &DensePoly::constant(rational::from_bigint(factorial(m as u64))),
            m,
            nn,
        );
        for _ in 0..e0 {
            factors.push(f0.clone());
        }
        for i in 1..=r * nn {
            factors.push(simple_residues(&rising(-i * m as i64), m, nn));
        }
        for i in 0..(r + 1) * nn {
            factors.push(simple_residues(&rising(1 + i * m as i64), m, nn));
        }
        let max_order = a as usize + 1;
        let mut acc = Expansion::polynomial(t, m, max_order, nn);
        for c in &factors {
            acc = acc.times_simple(c)?;
        }
        if !acc.poly.is_zero() {
            return Err(Error::Internal("polynomial part of F did not cancel".into()));
        }
        let mut table = PartialFractionTable::zeros(a as usize, m, params.big_n);
        for (h, row) in acc.poles.iter().enumerate() {
            if !row[a as usize].is_zero() {
                return Err(Error::Internal(format!("pole of order a+1 left at h = {h}")));
            }
            for j in 1..=a as usize {
                table.set(j, h, row[j - 1].clone());
            }
        }
        Ok(table)
    }
}

/// Solves the linear system `sum p_{j,h} / (t_i + Nh)^j = F(t_i)` at half-integer
/// points `t_i = offset + i + 1/2`; a singular system is retried with a shifted offset.
pub struct SolveMethod {
    pub max_attempts: usize,
}

impl Default for SolveMethod {
    fn default() -> Self {
        SolveMethod { max_attempts: 5 }
    }
}

impl PartialFractionStrategy for SolveMethod {
    fn name(&self) -> &'static str {
        "solve"
    }

    fn compute(&self, f: &FactoredRationalFunction, params: &Params) -> Result<PartialFractionTable> {
        let a = params.a as usize;
        let m = params.m() as usize;
        let nn = params.big_n as i64;
        let unknowns = a * (m + 1);
        for attempt in 0..self.max_attempts {
            let offset = rational::rat(2 * (attempt as i64) * unknowns as i64 + 1, 2);
            let mut rows = Vec::with_capacity(unknowns);
            let mut i = 0i64;
            while rows.len() < unknowns {
                let t = &offset + int(i);
                i += 1;
                if f.is_pole(&t) {
                    continue;
                }
                let mut row = Vec::with_capacity(unknowns + 1);
                for h in 0..=m as i64 {
                    let inv = (&t + int(nn * h)).recip();
                    let mut pw = inv.clone();
                    for _ in 0..a {
                        row.push(pw.clone());
                        pw *= &inv;
                    }
                }
                row.push(f.eval(&t)?);
                rows.push(row);
            }
            let (reduced, pivots) = linalg::rref(&rows)?;
            if pivots.len() != unknowns || pivots.iter().enumerate().any(|(i, &p)| i != p) {
                continue;
            }
            let mut table = PartialFractionTable::zeros(a, m, params.big_n);
            for h in 0..=m {
                for j in 1..=a {
                    table.set(j, h, reduced[h * a + j - 1][unknowns].clone());
                }
            }
            return Ok(table);
        }
        Err(Error::SingularSystem {
            attempts: self.max_attempts,
        })
    }
}

/// `(N d_m)^{a+1-j} N^{(a+1)m} p_{j,h}` is an integer for every entry.
pub fn check_denominators(table: &PartialFractionTable, params: &Params) -> bool {
    let nd = BigInt::from(params.big_n) * lcm_upto(params.m());
    let base = BigInt::from(params.big_n).pow(((params.a + 1) * params.m()) as u32);
    (1..=table.a).all(|j| {
        let scale = rational::from_bigint(&base * nd.pow((params.a as usize + 1 - j) as u32));
        (0..=table.m).all(|h| rational::is_integer(&(table.get(j, h) * &scale)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ratfunc::build_f;
    use crate::exact::rational::rat;

    #[test]
    fn methods_agree_on_small_instances() {
        for n in [1, 2] {
            let p = Params::new(4, 1, 1, n, 1, 1).unwrap();
            let f = build_f(&p);
            let prod = ProductMethod.compute(&f, &p).unwrap();
            let solve = SolveMethod::default().compute(&f, &p).unwrap();
            assert_eq!(prod, solve);
        }
    }

    #[test]
    fn leading_coefficient_matches_limit() {
        let p = Params::new(4, 1, 1, 2, 0, 1).unwrap();
        let table = partial_fractions_product(&p).unwrap();
        assert_eq!(table.get(4, 0), &int(6));
    }

    #[test]
    fn residues_sum_to_zero() {
        for (a, r, nn, n) in [(4, 1, 1, 3), (7, 1, 2, 4), (10, 1, 3, 6)] {
            let p = Params::new(a, r, nn, n, 0, 1).unwrap();
            let table = partial_fractions_product(&p).unwrap();
            let s: Rational = (0..=table.m).map(|h| table.get(1, h).clone()).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn textbook_splits() {
        // 1/t with a = 1, N = 1, n = 1
        let f = FactoredRationalFunction::new(int(1), [], [(int(0), 1)]);
        let p1 = Params { a: 1, r: 1, big_n: 1, n: 1, p: 0, big_t: 1 };
        let table = SolveMethod::default().compute(&f, &p1).unwrap();
        assert_eq!(table.get(1, 0), &int(1));
        assert_eq!(table.get(1, 1), &int(0));
        // 1/(t (t+N)) with a = 2, N = 3
        let f = FactoredRationalFunction::new(int(1), [], [(int(0), 1), (int(-3), 1)]);
        let p3 = Params { a: 2, r: 1, big_n: 3, n: 3, p: 0, big_t: 1 };
        let table = SolveMethod::default().compute(&f, &p3).unwrap();
        assert_eq!(table.get(1, 0), &rat(1, 3));
        assert_eq!(table.get(1, 1), &rat(-1, 3));
        assert_eq!(table.get(2, 0), &int(0));
    }

    #[test]
    fn denominator_bound_holds_and_is_sharp_enough_to_fail() {
        let p = Params::new(4, 1, 1, 2, 0, 1).unwrap();
        let mut table = partial_fractions_product(&p).unwrap();
        assert!(check_denominators(&table, &p));
        let q = Params::new(7, 1, 2, 4, 0, 2).unwrap();
        assert!(check_denominators(&partial_fractions_product(&q).unwrap(), &q));
        // the clearing factor for j = a is N d_2 = 2, which does not cancel 1/3
        let bad = BigInt::from(p.big_n) * lcm_upto(p.m()) + 1;
        table.set(p.a as usize, 0, Rational::new(BigInt::one(), bad));
        assert!(!check_denominators(&table, &p));
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(strategy("product").unwrap().name(), "product");
        assert!(strategy("magic").is_err());
    }
}
