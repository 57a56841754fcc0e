//! Dense exact linear algebra over a field: row reduction, rank and kernels.
//!
//! Pivots are the first nonzero entry in column order, processed top to bottom,
//! so every result is deterministic.

use super::coeff::FieldCoefficient;
use crate::error::{Error, Result};

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduced row echelon form with the pivot column of each nonzero row.
/// Zero rows are dropped.
pub fn rref<T: FieldCoefficient>(rows: &[Vec<T>]) -> Result<(Matrix<T>, Vec<usize>)> {
    let mut m: Matrix<T> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, found);
        let inv = m[top][col].inverse()?;
        m[top] = m[top].iter().map(|x| x.times(&inv)).collect();
        let pivot_row = m[top].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.minus(&factor.times(p));
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    Ok((m, pivots))
}

pub fn rank<T: FieldCoefficient>(rows: &[Vec<T>]) -> Result<usize> {
    Ok(rref(rows)?.1.len())
}

/// Basis of `{x : rows * x = 0}`, one vector per free column, with the free
/// coordinate set to one.
pub fn kernel<T: FieldCoefficient>(rows: &[Vec<T>], ncols: usize, one: &T) -> Result<Matrix<T>> {
    let (r, pivots) = rref(rows)?;
    let zero = one.zero_like();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = row[free].negated();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Matrix<T> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<T: FieldCoefficient>(a: &[Vec<T>], b: &[Vec<T>]) -> Result<Matrix<T>> {
    let inner = a.first().map_or(0, Vec::len);
    if inner != b.len() || inner == 0 {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.len(),
            inner,
            b.len(),
            b.first().map_or(0, Vec::len)
        )));
    }
    let ncols = b[0].len();
    Ok(a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(row[0].zero_like(), |acc, (x, brow)| {
                            if x.is_zero() {
                                acc
                            } else {
                                acc.plus(&x.times(&brow[j]))
                            }
                        })
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::coeff::Coefficient;
    use crate::exact::rational::{int, Rational};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn identity_and_zero_ranks() {
        let id: Matrix<Rational> = (0..5)
            .map(|i| (0..5).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(rank(&id).unwrap(), 5);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])).unwrap(), 0);
    }

    #[test]
    fn rref_is_canonical() {
        let (r, piv) = rref(&m(&[&[2, 4], &[1, 2]])).unwrap();
        assert_eq!(r, m(&[&[1, 2]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_of_one_equation() {
        let k = kernel(&m(&[&[1, 8]]), 2, &int(1)).unwrap();
        assert_eq!(k, m(&[&[-8, 1]]));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in proptest::collection::vec(-5i64..=5, 12)
        ) {
            let a: Matrix<Rational> = entries.chunks(4).map(|c| c.iter().map(|&x| int(x)).collect()).collect();
            let basis = kernel(&a, 4, &int(1)).unwrap();
            prop_assert_eq!(basis.len() + rank(&a).unwrap(), 4);
            for v in &basis {
                for row in &a {
                    let dot = row.iter().zip(v).fold(int(0), |acc, (x, y)| acc.plus(&x.times(y)));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
