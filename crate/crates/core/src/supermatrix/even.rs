//! Determinants and inverses of square matrices whose entries all lie in the
//! (commutative) even subring.
//!
//! Elimination only ever divides by units, i.e. entries whose body is a
//! nonzero constant. When a column has no unit left, the remaining trailing
//! block is finished by division-free cofactor expansion.

use crate::error::{Error, Result};
use crate::superalgebra::{Ring, SuperElement};

/// Square dense matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Square {
    pub dim: usize,
    pub data: Vec<SuperElement>,
}

impl Square {
    pub fn new(dim: usize, data: Vec<SuperElement>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Square { dim, data }
    }

    fn at(&self, i: usize, j: usize) -> &SuperElement {
        &self.data[i * self.dim + j]
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Square {
        let data = (0..self.dim)
            .filter(|&i| i != skip_row)
            .flat_map(|i| {
                (0..self.dim)
                    .filter(move |&j| j != skip_col)
                    .map(move |j| self.at(i, j).clone())
            })
            .collect();
        Square { dim: self.dim - 1, data }
    }
}

fn pivot_row(rows: &[Vec<SuperElement>], col: usize) -> Option<usize> {
    (col..rows.len()).find(|&r| rows[r][col].is_invertible())
}

/// Determinant over the even subring.
pub(crate) fn det(ring: &Ring, m: &Square) -> SuperElement {
    let n = m.dim;
    let mut rows: Vec<Vec<SuperElement>> = m.data.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
    let mut acc = SuperElement::one(ring);
    for col in 0..n {
        let Some(p) = pivot_row(&rows, col) else {
            let trailing: Vec<SuperElement> = rows[col..]
                .iter()
                .flat_map(|r| r[col..].iter().cloned())
                .collect();
            return &acc * &cofactor_det(ring, &Square::new(n - col, trailing));
        };
        if p != col {
            rows.swap(p, col);
            acc = -acc;
        }
        let pivot = rows[col][col].clone();
        let pivot_inv = pivot.inverse().expect("pivot is a unit");
        acc = &acc * &pivot;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &pivot_inv;
            for j in col..n {
                let delta = &factor * &rows[col][j];
                rows[r][j] = &rows[r][j] - &delta;
            }
        }
    }
    acc
}

/// Division-free Laplace expansion along the first row.
pub(crate) fn cofactor_det(ring: &Ring, m: &Square) -> SuperElement {
    match m.dim {
        0 => SuperElement::one(ring),
        1 => m.at(0, 0).clone(),
        2 => &(m.at(0, 0) * m.at(1, 1)) - &(m.at(0, 1) * m.at(1, 0)),
        n => {
            let mut acc = SuperElement::zero(ring);
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let term = m.at(0, j) * &cofactor_det(ring, &m.minor(0, j));
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Inverse over the even subring; fails unless the determinant is a unit.
pub(crate) fn inverse(ring: &Ring, m: &Square) -> Result<Square> {
    let n = m.dim;
    let mut rows: Vec<Vec<SuperElement>> = (0..n)
        .map(|i| {
            let mut row: Vec<SuperElement> = (0..n).map(|j| m.at(i, j).clone()).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    SuperElement::one(ring)
                } else {
                    SuperElement::zero(ring)
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = pivot_row(&rows, col) else {
            return adjugate_inverse(ring, m);
        };
        rows.swap(p, col);
        let pivot_inv = rows[col][col].inverse().expect("pivot is a unit");
        for x in rows[col].iter_mut() {
            *x = &*x * &pivot_inv;
        }
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for j in 0..2 * n {
                let delta = &factor * &rows[col][j];
                rows[r][j] = &rows[r][j] - &delta;
            }
        }
    }
    let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
    Ok(Square::new(n, data))
}

fn adjugate_inverse(ring: &Ring, m: &Square) -> Result<Square> {
    let d = det(ring, m);
    let d_inv = d
        .inverse()
        .map_err(|_| Error::NotInvertible(format!("determinant {d} is not a unit")))?;
    let n = m.dim;
    let mut data = vec![SuperElement::zero(ring); n * n];
    for i in 0..n {
        for j in 0..n {
            let c = &det(ring, &m.minor(i, j)) * &d_inv;
            // adj(m)[j][i] = (−1)^{i+j} · minor(i, j)
            data[j * n + i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(Square::new(n, data))
}
