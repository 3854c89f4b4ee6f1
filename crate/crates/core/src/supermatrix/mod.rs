//! Even supermatrices over a free supercommutative ring.
//!
//! Rows and columns are graded with the even indices first. An entry is even
//! when its row and column have the same parity and odd otherwise, so the
//! ordinary row-by-column product needs no extra signs.

mod even;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{same_ring, Parity, Ring, SuperElement};

use even::Square;

/// Graded dimensions `(m|n) × (m′|n′)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuperShape {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl SuperShape {
    pub fn new(rows: (usize, usize), cols: (usize, usize)) -> Self {
        SuperShape { rows, cols }
    }

    pub fn square(m: usize, n: usize) -> Self {
        SuperShape { rows: (m, n), cols: (m, n) }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.0 + self.rows.1
    }

    pub fn num_cols(&self) -> usize {
        self.cols.0 + self.cols.1
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_parity(&self, i: usize) -> Parity {
        if i < self.rows.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn col_parity(&self, j: usize) -> Parity {
        if j < self.cols.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity forced on entry `(i, j)`.
    pub fn entry_parity(&self, i: usize, j: usize) -> Parity {
        self.row_parity(i) + self.col_parity(j)
    }
}

impl fmt::Display for SuperShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})×({}|{})", self.rows.0, self.rows.1, self.cols.0, self.cols.1)
    }
}

/// A parity-patterned matrix of [`SuperElement`]s over one ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix {
    shape: SuperShape,
    ring: Ring,
    entries: Vec<SuperElement>,
}

impl SuperMatrix {
    /// Checks dimensions, ring and the even-morphism parity pattern.
    pub fn validate(shape: SuperShape, ring: &Ring, rows: Vec<Vec<SuperElement>>) -> Result<Self> {
        if rows.len() != shape.num_rows() || rows.iter().any(|r| r.len() != shape.num_cols()) {
            return Err(Error::ShapeMismatch(format!(
                "entry array does not have {} rows of {} entries",
                shape.num_rows(),
                shape.num_cols()
            )));
        }
        let entries: Vec<SuperElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let m = SuperMatrix { shape, ring: ring.clone(), entries };
        m.check_pattern()?;
        Ok(m)
    }

    /// Builds a matrix entry by entry, then validates it.
    pub fn from_fn<F>(shape: SuperShape, ring: &Ring, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> SuperElement,
    {
        let rows = (0..shape.num_rows())
            .map(|i| (0..shape.num_cols()).map(|j| f(i, j)).collect())
            .collect();
        Self::validate(shape, ring, rows)
    }

    // Internal constructor for results that are pattern-valid by construction.
    fn build(shape: SuperShape, ring: &Ring, entries: Vec<SuperElement>) -> Self {
        debug_assert_eq!(entries.len(), shape.num_rows() * shape.num_cols());
        let m = SuperMatrix { shape, ring: ring.clone(), entries };
        debug_assert!(m.check_pattern().is_ok(), "pattern broken in {m}");
        m
    }

    fn check_pattern(&self) -> Result<()> {
        for i in 0..self.shape.num_rows() {
            for j in 0..self.shape.num_cols() {
                if !self.get(i, j).has_parity(self.shape.entry_parity(i, j)) {
                    return Err(Error::ParityPatternViolation { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn zeros(ring: &Ring, shape: SuperShape) -> Self {
        let n = shape.num_rows() * shape.num_cols();
        Self::build(shape, ring, vec![SuperElement::zero(ring); n])
    }

    pub fn identity(ring: &Ring, m: usize, n: usize) -> Self {
        let shape = SuperShape::square(m, n);
        let k = m + n;
        let entries = (0..k * k)
            .map(|idx| {
                if idx / k == idx % k {
                    SuperElement::one(ring)
                } else {
                    SuperElement::zero(ring)
                }
            })
            .collect();
        Self::build(shape, ring, entries)
    }

    pub fn shape(&self) -> SuperShape {
        self.shape
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_rows(&self) -> usize {
        self.shape.num_rows()
    }

    pub fn num_cols(&self) -> usize {
        self.shape.num_cols()
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperElement {
        &self.entries[i * self.num_cols() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[SuperElement]> {
        let c = self.num_cols();
        (0..self.num_rows()).map(move |i| &self.entries[i * c..(i + 1) * c])
    }

    pub fn entries(&self) -> &[SuperElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.shape.is_square()
            && (0..self.num_rows()).all(|i| {
                (0..self.num_cols()).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self::build(self.shape, &self.ring, entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self::build(self.shape, &self.ring, entries))
    }

    pub fn neg(&self) -> Self {
        Self::build(self.shape, &self.ring, self.entries.iter().map(|e| -e).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::build(self.shape, &self.ring, self.entries.iter().map(|e| e.scale(c)).collect())
    }

    /// Row-by-column product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.shape.cols != other.shape.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {} by {}",
                self.shape, other.shape
            )));
        }
        let shape = SuperShape::new(self.shape.rows, other.shape.cols);
        let (rows, inner, cols) = (self.num_rows(), self.num_cols(), other.num_cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = SuperElement::zero(&self.ring);
                for k in 0..inner {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self::build(shape, &self.ring, entries))
    }

    /// Entrywise body.
    pub fn body(&self) -> Self {
        Self::build(self.shape, &self.ring, self.entries.iter().map(SuperElement::body).collect())
    }

    /// Submatrix on the given absolute row and column indices. Each list must
    /// be increasing, so even indices come first and the grading carries over.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        let even_rows = rows.iter().filter(|&&i| i < self.shape.rows.0).count();
        let even_cols = cols.iter().filter(|&&j| j < self.shape.cols.0).count();
        let shape = SuperShape::new(
            (even_rows, rows.len() - even_rows),
            (even_cols, cols.len() - even_cols),
        );
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self::build(shape, &self.ring, entries)
    }

    fn even_rows(&self) -> Vec<usize> {
        (0..self.shape.rows.0).collect()
    }

    fn odd_rows(&self) -> Vec<usize> {
        (self.shape.rows.0..self.num_rows()).collect()
    }

    fn even_cols(&self) -> Vec<usize> {
        (0..self.shape.cols.0).collect()
    }

    fn odd_cols(&self) -> Vec<usize> {
        (self.shape.cols.0..self.num_cols()).collect()
    }

    /// The four parity blocks `[[A, B], [C, D]]` (A even-even, D odd-odd).
    pub fn blocks(&self) -> [SuperMatrix; 4] {
        let (er, or, ec, oc) = (self.even_rows(), self.odd_rows(), self.even_cols(), self.odd_cols());
        [
            self.select(&er, &ec),
            self.select(&er, &oc),
            self.select(&or, &ec),
            self.select(&or, &oc),
        ]
    }

    /// Places `parts` (a grid of blocks, each row of the grid sharing its row
    /// grading and each column its column grading) into one matrix. Blocks
    /// may have zero rows or columns.
    pub fn from_blocks(ring: &Ring, parts: &[Vec<&SuperMatrix>]) -> Result<Self> {
        let grid_cols = parts.first().map_or(0, Vec::len);
        if grid_cols == 0 || parts.iter().any(|r| r.len() != grid_cols) {
            return Err(Error::ShapeMismatch("empty or ragged block grid".into()));
        }
        let graded_in_order = |sizes: Vec<(usize, usize)>| {
            let mut seen_odd = false;
            sizes.into_iter().all(|(e, o)| {
                let ok = !(seen_odd && e > 0);
                seen_odd |= o > 0;
                ok
            })
        };
        if !graded_in_order(parts.iter().map(|r| r[0].shape.rows).collect())
            || !graded_in_order(parts[0].iter().map(|b| b.shape.cols).collect())
        {
            return Err(Error::ShapeMismatch("block grid puts odd indices before even ones".into()));
        }
        let row_h: Vec<usize> = parts.iter().map(|r| r.first().map_or(0, |b| b.num_rows())).collect();
        let col_w: Vec<usize> = (0..grid_cols).map(|c| parts[0][c].num_cols()).collect();
        for (bi, row) in parts.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if b.num_rows() != row_h[bi] || b.num_cols() != col_w[bj] {
                    return Err(Error::ShapeMismatch(format!("block ({bi}, {bj}) has the wrong size")));
                }
                if !same_ring(b.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
            }
        }
        let total_r: usize = row_h.iter().sum();
        let total_c: usize = col_w.iter().sum();
        let mut rows = vec![Vec::with_capacity(total_c); total_r];
        let mut even_r = 0;
        let mut even_c = 0;
        let mut r0 = 0;
        for (bi, row) in parts.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if bj == 0 {
                    even_r += b.shape.rows.0;
                }
                if bi == 0 {
                    even_c += b.shape.cols.0;
                }
                for i in 0..b.num_rows() {
                    rows[r0 + i].extend((0..b.num_cols()).map(|j| b.get(i, j).clone()));
                }
            }
            r0 += row_h[bi];
        }
        let shape = SuperShape::new((even_r, total_r - even_r), (even_c, total_c - even_c));
        Self::validate(shape, ring, rows)
    }

    fn as_square(&self) -> Square {
        debug_assert_eq!(self.num_rows(), self.num_cols());
        Square::new(self.num_rows(), self.entries.clone())
    }

    fn from_square(shape: SuperShape, ring: &Ring, sq: Square) -> Self {
        Self::build(shape, ring, sq.data)
    }

    fn require_square(&self) -> Result<()> {
        if self.shape.is_square() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{} is not square", self.shape)))
        }
    }

    /// Whether the even-even and odd-odd body blocks are invertible.
    pub fn is_invertible(&self) -> bool {
        if !self.shape.is_square() {
            return false;
        }
        let [a, _, _, d] = self.blocks();
        body_invertible(&a) && body_invertible(&d)
    }

    /// Two-sided inverse by Schur complement with respect to the odd-odd block.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let [a, b, c, d] = self.blocks();
        if !body_invertible(&a) {
            return Err(Error::NotInvertible("body of the even-even block is singular".into()));
        }
        if !body_invertible(&d) {
            return Err(Error::NotInvertible("body of the odd-odd block is singular".into()));
        }
        let d_inv = even_inverse(&d)?;
        let s = a.sub(&b.mul(&d_inv)?.mul(&c)?)?;
        let s_inv = even_inverse(&s)?;
        let s_inv_b_d_inv = s_inv.mul(&b)?.mul(&d_inv)?;
        let d_inv_c = d_inv.mul(&c)?;
        let top_right = s_inv_b_d_inv.neg();
        let bottom_left = d_inv_c.mul(&s_inv)?.neg();
        let bottom_right = d_inv.add(&d_inv_c.mul(&s_inv_b_d_inv)?)?;
        Self::from_blocks(&self.ring, &[vec![&s_inv, &top_right], vec![&bottom_left, &bottom_right]])
    }

    /// Berezinian `det(A − B D⁻¹ C) · det(D)⁻¹`.
    pub fn berezinian(&self) -> Result<SuperElement> {
        self.require_square()?;
        let [a, b, c, d] = self.blocks();
        if !body_invertible(&d) {
            return Err(Error::NotInvertible("body of the odd-odd block is singular".into()));
        }
        let d_inv = even_inverse(&d)?;
        let s = a.sub(&b.mul(&d_inv)?.mul(&c)?)?;
        let det_s = even::det(&self.ring, &s.as_square());
        let det_d = even::det(&self.ring, &d.as_square());
        Ok(&det_s * &det_d.inverse()?)
    }
}

/// Determinant of a square matrix with only even entries.
pub fn even_det(m: &SuperMatrix) -> Result<SuperElement> {
    m.require_square()?;
    if m.shape.rows.0 > 0 && m.shape.rows.1 > 0 {
        return Err(Error::ShapeMismatch("determinant needs a purely even or purely odd grading".into()));
    }
    Ok(even::det(m.ring(), &m.as_square()))
}

fn body_invertible(m: &SuperMatrix) -> bool {
    even::det(m.ring(), &m.body().as_square()).is_invertible()
}

// Inverse of an (k|0)×(k|0) or (0|k)×(0|k) block.
fn even_inverse(m: &SuperMatrix) -> Result<SuperMatrix> {
    let inv = even::inverse(m.ring(), &m.as_square())?;
    Ok(SuperMatrix::from_square(m.shape, m.ring(), inv))
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar;
    use crate::superalgebra::SuperRingSpec;

    fn grass(q: usize) -> Ring {
        SuperRingSpec::grassmann(q).unwrap()
    }

    fn t(r: &Ring, i: usize) -> SuperElement {
        SuperElement::var(r, &format!("t{i}")).unwrap()
    }

    fn n(r: &Ring, k: i64) -> SuperElement {
        SuperElement::from_int(r, k)
    }

    fn m11(r: &Ring, e: [SuperElement; 4]) -> Result<SuperMatrix> {
        let [a, b, c, d] = e;
        SuperMatrix::validate(SuperShape::square(1, 1), r, vec![vec![a, b], vec![c, d]])
    }

    #[test]
    fn validation_examples() {
        let r = grass(2);
        assert!(SuperMatrix::identity(&r, 1, 1).check_pattern().is_ok());
        let bad = m11(&r, [t(&r, 1), n(&r, 0), n(&r, 0), n(&r, 1)]);
        assert_eq!(bad, Err(Error::ParityPatternViolation { row: 0, col: 0 }));
        assert!(m11(&r, [n(&r, 1), t(&r, 1), t(&r, 2), n(&r, 1)]).is_ok());
        let short = SuperMatrix::validate(SuperShape::square(1, 1), &r, vec![vec![n(&r, 1)]]);
        assert!(matches!(short, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn product_example() {
        let r = grass(2);
        let t12 = &t(&r, 1) * &t(&r, 2);
        let x = m11(&r, [n(&r, 1), t(&r, 1), t(&r, 2), n(&r, 1)]).unwrap();
        let y = m11(&r, [n(&r, 1), -t(&r, 1), -t(&r, 2), n(&r, 1)]).unwrap();
        let expected = m11(&r, [&n(&r, 1) - &t12, n(&r, 0), n(&r, 0), &n(&r, 1) + &t12]).unwrap();
        assert_eq!(x.mul(&y).unwrap(), expected);
        assert_eq!(SuperMatrix::identity(&r, 1, 1).mul(&x).unwrap(), x);
    }

    #[test]
    fn inverse_example() {
        let r = grass(2);
        let t12 = &t(&r, 1) * &t(&r, 2);
        let x = m11(&r, [n(&r, 1), t(&r, 1), t(&r, 2), n(&r, 1)]).unwrap();
        let expected = m11(&r, [&n(&r, 1) + &t12, -t(&r, 1), -t(&r, 2), &n(&r, 1) - &t12]).unwrap();
        let inv = x.inverse().unwrap();
        assert_eq!(inv, expected);
        assert!(x.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&x).unwrap().is_identity());
        let id = SuperMatrix::identity(&r, 2, 1);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn singular_body_is_rejected() {
        let r = grass(2);
        let t12 = &t(&r, 1) * &t(&r, 2);
        let x = m11(&r, [t12.clone(), t(&r, 1), t(&r, 2), n(&r, 1)]).unwrap();
        match x.inverse() {
            Err(Error::NotInvertible(msg)) => assert!(msg.contains("even-even")),
            other => panic!("unexpected {other:?}"),
        }
        let y = m11(&r, [n(&r, 1), t(&r, 1), t(&r, 2), t12]).unwrap();
        assert!(matches!(y.berezinian(), Err(Error::NotInvertible(_))));
        assert!(!y.is_invertible());
    }

    #[test]
    fn berezinian_examples() {
        let r = grass(2);
        assert!(SuperMatrix::identity(&r, 2, 2).berezinian().unwrap().is_one());
        let diag = m11(&r, [n(&r, 2), n(&r, 0), n(&r, 0), n(&r, 4)]).unwrap();
        assert_eq!(diag.berezinian().unwrap(), SuperElement::constant(&r, scalar::from_ratio(1, 2)));
        let x = m11(&r, [n(&r, 1), t(&r, 1), t(&r, 2), n(&r, 1)]).unwrap();
        let t12 = &t(&r, 1) * &t(&r, 2);
        assert_eq!(x.berezinian().unwrap(), &n(&r, 1) - &t12);
    }

    #[test]
    fn blocks_roundtrip() {
        let r = grass(3);
        let x = SuperMatrix::from_fn(SuperShape::square(2, 1), &r, |i, j| {
            if (i < 2) == (j < 2) {
                n(&r, (i * 3 + j) as i64 + 1)
            } else {
                t(&r, 1 + (i + j) % 3)
            }
        })
        .unwrap();
        let [a, b, c, d] = x.blocks();
        assert_eq!(a.shape(), SuperShape::new((2, 0), (2, 0)));
        assert_eq!(b.shape(), SuperShape::new((2, 0), (0, 1)));
        let back = SuperMatrix::from_blocks(&r, &[vec![&a, &b], vec![&c, &d]]).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn mul_shape_mismatch() {
        let r = grass(1);
        let a = SuperMatrix::identity(&r, 1, 1);
        let b = SuperMatrix::identity(&r, 2, 0);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
    }
}
