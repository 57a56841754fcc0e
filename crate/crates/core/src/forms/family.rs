//! The polynomial families `P_{k,j}`, `U_k`, `V_k`, their residue splits and the
//! integer matrix `s_{k,i}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::params::Params;
use super::partial_fractions::PartialFractionTable;
use crate::error::{Error, Result};
use crate::exact::poly::DensePoly;
use crate::exact::rational::{self, int, Rational};
use crate::exact::LaurentPoly;

type Lp = LaurentPoly<Rational>;

#[derive(Clone, Debug, Serialize)]
pub struct FormFamily {
    pub params: Params,
    /// `p[k-1][j-1] = P_{k,j}`, `1 <= j <= a`.
    pub p: Vec<Vec<Lp>>,
    pub u: Vec<Lp>,
    pub v: Vec<Lp>,
    /// `u_split[k-1][lambda] = U_{k,lambda}`.
    pub u_split: Vec<Vec<Lp>>,
    pub v_split: Vec<Vec<Lp>>,
    #[serde(serialize_with = "serialize_bigint")]
    pub delta: BigInt,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `s[k-1][i-2] = s_{k,i}` for `2 <= i <= a+N`.
pub type SMatrix = Vec<Vec<BigInt>>;

/// `U_1 = -sum_{t=1}^n z^t sum_j sum_{h <= (t-1)/N} p_{j,h}/(Nh-t)^j` and
/// `V_1 = -sum_{t=0}^{n-1} z^t sum_j sum_{h >= (t+1)/N} p_{j,h}/(Nh-t)^j`.
pub fn build_u1_v1(
    table: &PartialFractionTable,
    params: &Params,
) -> (DensePoly<Rational>, DensePoly<Rational>) {
    let n = params.n as i64;
    let nn = params.big_n as i64;
    let inner = |t: i64, hs: std::ops::RangeInclusive<i64>| -> Rational {
        let mut acc = Rational::zero();
        for h in hs {
            let base = int(nn * h - t).recip();
            let mut pw = base.clone();
            for j in 1..=table.a {
                acc += table.get(j, h as usize) * &pw;
                pw *= &base;
            }
        }
        -acc
    };
    let mut u = vec![Rational::zero(); n as usize + 1];
    let mut v = vec![Rational::zero(); n as usize + 1];
    for t in 1..=n {
        u[t as usize] = inner(t, 0..=(t - 1).div_euclid(nn));
    }
    for t in 0..n {
        // ceil((t+1)/N)
        let lo = (t + nn).div_euclid(nn);
        v[t as usize] = inner(t, lo..=params.m() as i64);
    }
    (DensePoly::new(u), DensePoly::new(v))
}

fn level_from(p: &[Lp], u: &Lp, v: &Lp, k: usize) -> Result<(Vec<Lp>, Lp, Lp)> {
    let a = p.len();
    let next: Vec<Lp> = (0..a)
        .map(|j| {
            let d = p[j].derivative();
            match p.get(j + 1) {
                Some(up) => d.sub(&up.shift(-1)),
                None => d,
            }
        })
        .collect();
    // P_{k-1,1} / (1-z), exact
    let q = p[0]
        .div_one_minus(&rational::int(1))
        .ok_or(Error::InexactDivision { k })?;
    let u_next = u.derivative().sub(&q);
    let v_next = v.derivative().add(&q.shift(-1));
    Ok((next, u_next, v_next))
}

impl FormFamily {
    /// Level 1 only.
    pub fn base(params: &Params, table: &PartialFractionTable) -> Self {
        let (u1, v1) = build_u1_v1(table, params);
        let p1: Vec<Lp> = table.polynomials().iter().map(LaurentPoly::from_poly).collect();
        let u1 = LaurentPoly::from_poly(&u1);
        let v1 = LaurentPoly::from_poly(&v1);
        let nn = params.big_n as usize;
        FormFamily {
            params: *params,
            u_split: vec![u1.split_by_residue(nn)],
            v_split: vec![v1.split_by_residue(nn)],
            p: vec![p1],
            u: vec![u1],
            v: vec![v1],
            delta: params.delta(),
        }
    }

    /// Levels `1..=k_max`, applying the recurrences.
    pub fn build(params: &Params, table: &PartialFractionTable, k_max: usize) -> Result<Self> {
        let mut fam = Self::base(params, table);
        for k in 2..=k_max {
            fam.recurrence_step(k)?;
        }
        Ok(fam)
    }

    /// Partial fractions by the product method, or by the solver when the product
    /// method does not apply, followed by `k_max - 1` recurrence steps.
    pub fn construct(params: &Params, k_max: usize) -> Result<Self> {
        let table = match super::partial_fractions::partial_fractions_product(params) {
            Ok(t) => t,
            Err(_) => super::partial_fractions::partial_fractions_solve(
                &super::ratfunc::build_f(params),
                params,
            )?,
        };
        Self::build(params, &table, k_max)
    }

    pub fn levels(&self) -> usize {
        self.p.len()
    }

    /// Extends the family to level `k`; level `k-1` must be present.
    pub fn recurrence_step(&mut self, k: usize) -> Result<()> {
        if k != self.levels() + 1 {
            return Err(Error::Precondition(format!(
                "level {} missing before level {k}",
                k - 1
            )));
        }
        if k as i64 > self.params.d0() - 1 {
            return Err(Error::Precondition(format!(
                "k = {k} exceeds d_0 - 1 = {}",
                self.params.d0() - 1
            )));
        }
        let last = k - 2;
        let (p, u, v) = level_from(&self.p[last], &self.u[last], &self.v[last], k)?;
        let nn = self.params.big_n as usize;
        self.u_split.push(u.shift(k as i64 - 1).split_by_residue(nn));
        self.v_split.push(v.shift(k as i64 - 1).split_by_residue(nn));
        self.p.push(p);
        self.u.push(u);
        self.v.push(v);
        Ok(())
    }

    /// `P_{k,j}(1)`.
    pub fn p_at_one(&self, k: usize, j: usize) -> Rational {
        self.p[k - 1][j - 1].eval_at_one().unwrap_or_else(Rational::zero)
    }

    /// Rational entries before the integrality certificate:
    /// `delta P_{k,i}(1)` for `i <= a`, `delta (U_{k,lambda}(1) + (-1)^p V_{k,N-lambda}(1))`.
    pub fn s_rational(&self) -> Vec<Vec<Rational>> {
        let a = self.params.a as usize;
        let nn = self.params.big_n as usize;
        let delta = rational::from_bigint(self.delta.clone());
        let sign = if self.params.p == 0 { int(1) } else { int(-1) };
        let at_one = |l: &Lp| l.eval_at_one().unwrap_or_else(Rational::zero);
        (1..=self.levels())
            .map(|k| {
                let mut row: Vec<Rational> = (2..=a).map(|i| &delta * self.p_at_one(k, i)).collect();
                for lambda in 0..nn {
                    let u = at_one(&self.u_split[k - 1][lambda]);
                    let v = at_one(&self.v_split[k - 1][(nn - lambda) % nn]);
                    row.push(&delta * (u + &sign * v));
                }
                row
            })
            .collect()
    }

    /// The certified integer matrix `s_{k,i}`.
    pub fn compute_ski(&self) -> Result<SMatrix> {
        self.s_rational()
            .into_iter()
            .enumerate()
            .map(|(k, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(idx, q)| {
                        if rational::is_integer(&q) {
                            Ok(q.numer().clone())
                        } else {
                            Err(Error::NonIntegerEntry {
                                k: k + 1,
                                i: idx + 2,
                                value: q,
                            })
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `z^{k-1} P_{k,j}(z)` lies in `Q[z^N]` for every stored level.
    pub fn p_in_lattice(&self) -> bool {
        let nn = self.params.big_n as i64;
        self.p.iter().enumerate().all(|(idx, row)| {
            row.iter()
                .all(|pk| pk.shift(idx as i64).supported_on_residue(0, nn))
        })
    }
}

/// `delta * poly` has integer coefficients.
pub fn scaled_is_integral(poly: &DensePoly<Rational>, delta: &BigInt) -> bool {
    poly.scale(&rational::from_bigint(delta.clone())).is_integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::partial_fractions::partial_fractions_product;

    fn family(a: u64, r: u64, nn: u64, n: u64, p: u8) -> FormFamily {
        let params = Params::new(a, r, nn, n, p, 1).unwrap();
        let table = partial_fractions_product(&params).unwrap();
        FormFamily::build(&params, &table, params.k_max(None)).unwrap()
    }

    #[test]
    fn u1_v1_small_instance() {
        // direct summation for (a, r, N, n) = (4, 1, 1, 1)
        let params = Params::new(4, 1, 1, 1, 0, 1).unwrap();
        let table = partial_fractions_product(&params).unwrap();
        let (u, v) = build_u1_v1(&table, &params);
        let mut expect_u = Rational::zero();
        for j in 1..=4 {
            expect_u -= table.get(j, 0) * rational::pow(&int(-1), -(j as i64));
        }
        assert_eq!(u.coeffs(), &[Rational::zero(), expect_u]);
        let mut expect_v = Rational::zero();
        for j in 1..=4 {
            expect_v -= table.get(j, 1) * rational::pow(&int(1), -(j as i64));
        }
        assert_eq!(v.coeff(0), Some(&expect_v));
        assert!(v.degree() < Some(1));
        assert!(scaled_is_integral(&u, &params.delta()));
        assert!(scaled_is_integral(&v, &params.delta()));
    }

    #[test]
    fn small_matrix_matches_frozen_values() {
        // frozen from an independent symbolic computation
        let fam = family(4, 1, 1, 2, 1);
        let s = fam.compute_ski().unwrap();
        let row = |v: [i64; 4]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(s[0], row([26640, 0, 4992, 0]));
        assert_eq!(s[1], row([26640, -2336, 4992, -5616]));
        assert_eq!(s[2], row([9552, -2336, 384, -5616]));
    }

    #[test]
    fn recurrence_invariants() {
        for (a, r, nn, n) in [(4, 1, 1, 2), (7, 1, 2, 4), (10, 1, 3, 3)] {
            let fam = family(a, r, nn, n, 0);
            assert!(fam.p_in_lattice());
            for k in 1..=fam.levels() {
                assert!(fam.p_at_one(k, 1).is_zero());
            }
            let u1v1 = DensePoly::new(fam.u[0].add(&fam.v[0]).coeffs().to_vec());
            assert!(LaurentPoly::from_poly(&u1v1).supported_on_residue(0, nn as i64));
            for k in 0..fam.levels() {
                for side in [&fam.u_split[k], &fam.v_split[k]] {
                    assert!(side.iter().all(|piece| piece.supported_on_residue(0, nn as i64)));
                }
            }
        }
    }

    #[test]
    fn first_level_is_the_base_case() {
        let params = Params::new(4, 1, 1, 2, 0, 1).unwrap();
        let table = partial_fractions_product(&params).unwrap();
        let fam = FormFamily::base(&params, &table);
        let polys = table.polynomials();
        assert_eq!(fam.p[0].len(), 4);
        for (p, poly) in fam.p[0].iter().zip(&polys) {
            assert_eq!(*p, LaurentPoly::from_poly(poly));
        }
        assert_eq!(fam.u_split[0][0], fam.u[0]);
    }

    #[test]
    fn zero_row_for_even_parameters() {
        let fam = family(7, 1, 2, 4, 0);
        let s = fam.compute_ski().unwrap();
        // column i = a+1+N/2 = 9 sits at index i-2
        assert!(s.iter().all(|row| row[7].is_zero()));
    }

    #[test]
    fn beyond_the_valid_range_is_rejected() {
        let mut fam = family(4, 1, 1, 1, 0);
        assert_eq!(fam.levels(), 5);
        assert!(fam.recurrence_step(6).is_err());
    }
}
