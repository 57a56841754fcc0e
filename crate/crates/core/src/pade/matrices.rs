//! The matrices `M` and `P` with `[s_{k,i}] = M P`, ranks over `Q(omega)`, and
//! canonical column spaces.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::coeff::Coefficient;
use crate::exact::cyclo::{CycloField, CycloNumber};
use crate::exact::linalg::{self, Matrix};
use crate::exact::rational::{self, Rational};
use crate::forms::{FormFamily, SMatrix};

/// `m[i-2][j-2] = m_{i,j}` for `2 <= i <= a+N`, `2 <= j <= a+N+1`.
pub fn build_m(a: usize, big_n: usize, p: u8, delta: &BigInt, field: &Arc<CycloField>) -> Matrix<CycloNumber> {
    let q = a + big_n + 1;
    let zero = CycloNumber::from_int(field, 0);
    let mut m = vec![vec![zero; q - 1]; a + big_n - 1];
    let d = rational::from_bigint(delta.clone());
    let d_over_n = &d / rational::int(big_n as i64);
    let sign = if p == 0 { 1 } else { -1 };
    for i in 2..=a + 1 {
        m[i - 2][i - 2] = CycloNumber::from_rational(field, d.clone());
    }
    for ell in 1..=big_n {
        let col = a + 1 + ell - 2;
        m[a - 1][col] = CycloNumber::from_rational(field, &d_over_n * rational::int(sign - 1));
        for lambda in 1..big_n {
            let e = (lambda * ell) as i64;
            let entry = CycloNumber::omega_pow(field, e)
                .times_int(&BigInt::from(sign))
                .minus(&CycloNumber::omega_pow(field, -e));
            m[a + lambda - 1][col] = entry.scale(&d_over_n);
        }
    }
    m
}

/// `P[j-2][k-1] = P_{k,j}(1)` for `2 <= j <= q`, built from the family through
/// `P_{k,a+1}(1) = (U_k + V_k)(1)` and `P_{k,a+1+l}(1) = omega^{l(k-1)} V_k(omega^l)
/// = sum_lambda omega^{lambda l} V_{k,lambda}(1)`.
pub fn build_p(family: &FormFamily, field: &Arc<CycloField>) -> Matrix<CycloNumber> {
    let a = family.params.a as usize;
    let nn = family.params.big_n as usize;
    let levels = family.levels();
    let at_one = |p: &crate::exact::LaurentPoly<Rational>| p.eval_at_one().unwrap_or_else(Rational::zero);
    let mut rows = Vec::with_capacity(a + nn);
    for j in 2..=a {
        rows.push(
            (1..=levels)
                .map(|k| CycloNumber::from_rational(field, family.p_at_one(k, j)))
                .collect(),
        );
    }
    rows.push(
        (0..levels)
            .map(|k| CycloNumber::from_rational(field, at_one(&family.u[k]) + at_one(&family.v[k])))
            .collect(),
    );
    for ell in 1..=nn {
        rows.push(
            (0..levels)
                .map(|k| {
                    let mut acc = CycloNumber::from_int(field, 0);
                    for (lambda, piece) in family.v_split[k].iter().enumerate() {
                        let w = CycloNumber::omega_pow(field, (lambda * ell) as i64);
                        acc = acc.plus(&w.scale(&at_one(piece)));
                    }
                    acc
                })
                .collect(),
        );
    }
    rows
}

/// `M P` equals the integer matrix `s` (indexed `[k-1][i-2]`) entrywise. A product entry
/// outside `Q` is an error.
pub fn verify_product(m: &[Vec<CycloNumber>], p: &[Vec<CycloNumber>], s: &SMatrix) -> Result<bool> {
    let prod = linalg::mat_mul(m, p)?;
    if prod.len() != s.first().map_or(0, Vec::len) || prod.first().map_or(0, Vec::len) != s.len() {
        return Err(Error::Dimension("product and s-matrix shapes differ".into()));
    }
    for (i, row) in prod.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            let value = entry.to_rational().ok_or(Error::NonRationalEntry { row: i + 2, col: k + 1 })?;
            if value != rational::from_bigint(s[k][i].clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn rank_over_cyclotomic(m: &[Vec<CycloNumber>]) -> Result<usize> {
    linalg::rank(m)
}

/// Canonical basis of the column span of `matrix` (rows indexed first): the nonzero rows
/// of the reduced row echelon form of its transpose.
pub fn column_space_basis(matrix: &[Vec<Rational>]) -> Result<Matrix<Rational>> {
    Ok(linalg::rref(&linalg::transpose(matrix))?.0)
}

/// Same as [`column_space_basis`] for the s-matrix, whose rows are already the spanning vectors.
pub fn s_column_space(s: &SMatrix) -> Result<Matrix<Rational>> {
    let rows: Matrix<Rational> = s
        .iter()
        .map(|r| r.iter().map(|x| rational::from_bigint(x.clone())).collect())
        .collect();
    Ok(linalg::rref(&rows)?.0)
}

/// Hex sha256 of the canonical text form `e,e,...;e,e,...`.
pub fn basis_hash(basis: &[Vec<Rational>]) -> String {
    let text = basis
        .iter()
        .map(|row| row.iter().map(rational::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Row `a+1+N/2` of `s` vanishes; only meaningful for even `N`.
pub fn has_zero_row(s: &SMatrix, a: usize, big_n: usize) -> bool {
    big_n.is_multiple_of(2) && s.iter().all(|row| row[a + 1 + big_n / 2 - 2].is_zero())
}
