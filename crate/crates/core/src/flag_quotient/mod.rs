//! The standard parabolic `P`, its unipotent complement `N`, the big cell,
//! and the unique factorization `g = n · p` of a big-cell element of
//! `GL(m|n)(R)`.
//!
//! Indices of `(m|n)` are split into four consecutive blocks of sizes
//! `(r, m−r | n−s, s)`. Blocks 1 and 4 span the standard subspace `W`.

pub mod closed_form;

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superalgebra::{same_ring, Ring, SuperElement};
use crate::supermatrix::{even_det, SuperMatrix, SuperShape};

/// Dimensions `m|n` of the ambient space and `r|s` of the standard subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockProfile {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl BlockProfile {
    pub fn new(m: usize, n: usize, r: usize, s: usize) -> Result<Self> {
        let bp = BlockProfile { m, n, r, s };
        bp.check()?;
        Ok(bp)
    }

    pub fn check(&self) -> Result<()> {
        if self.r > self.m || self.s > self.n {
            return Err(Error::InvalidProfile(format!(
                "subspace {}|{} does not fit in {}|{}",
                self.r, self.s, self.m, self.n
            )));
        }
        Ok(())
    }

    /// Index ranges of blocks 1..4 (returned 0-based: `[b1, b2, b3, b4]`).
    pub fn block_ranges(&self) -> [Range<usize>; 4] {
        let (m, n, r, s) = (self.m, self.n, self.r, self.s);
        [0..r, r..m, m..m + n - s, m + n - s..m + n]
    }

    pub fn block_sizes(&self) -> [usize; 4] {
        [self.r, self.m - self.r, self.n - self.s, self.s]
    }

    /// Which block (0-based) an index of `(m|n)` falls into, and its offset.
    pub fn locate(&self, idx: usize) -> (usize, usize) {
        let ranges = self.block_ranges();
        let b = ranges.iter().position(|rg| rg.contains(&idx)).expect("index out of range");
        (b, idx - ranges[b].start)
    }

    pub fn ambient_shape(&self) -> SuperShape {
        SuperShape::square(self.m, self.n)
    }

    /// Shape of a span matrix `(m|n) × (r|s)`.
    pub fn span_shape(&self) -> SuperShape {
        SuperShape::new((self.m, self.n), (self.r, self.s))
    }

    /// Blocks 1 and 4: the coordinates of the standard subspace.
    pub fn subspace_indices(&self) -> Vec<usize> {
        let [b1, _, _, b4] = self.block_ranges();
        b1.chain(b4).collect()
    }

    /// Blocks 2 and 3: the chart coordinates.
    pub fn complement_indices(&self) -> Vec<usize> {
        let [_, b2, b3, _] = self.block_ranges();
        b2.chain(b3).collect()
    }

    fn check_square(&self, g: &SuperMatrix) -> Result<()> {
        if g.shape() != self.ambient_shape() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} for profile {self}, got {}",
                self.ambient_shape(),
                g.shape()
            )));
        }
        Ok(())
    }
}

/// Block `(i, j)` of a `(m|n)` matrix, 1-based as in the block displays.
pub fn block(g: &SuperMatrix, bp: &BlockProfile, i: usize, j: usize) -> SuperMatrix {
    let ranges = bp.block_ranges();
    let rows: Vec<usize> = ranges[i - 1].clone().collect();
    let cols: Vec<usize> = ranges[j - 1].clone().collect();
    g.select(&rows, &cols)
}

impl std::fmt::Display for BlockProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{},{}", self.m, self.n, self.r, self.s)
    }
}

/// Coordinates `u, η, ξ, v` of an element of `N(R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NCoordinates {
    profile: BlockProfile,
    u: SuperMatrix,
    eta: SuperMatrix,
    xi: SuperMatrix,
    v: SuperMatrix,
}

impl NCoordinates {
    pub fn new(
        profile: BlockProfile,
        u: SuperMatrix,
        eta: SuperMatrix,
        xi: SuperMatrix,
        v: SuperMatrix,
    ) -> Result<Self> {
        profile.check()?;
        let [r, m_r, n_s, s] = profile.block_sizes();
        let expected = [
            ("u", &u, SuperShape::new((m_r, 0), (r, 0))),
            ("eta", &eta, SuperShape::new((m_r, 0), (0, s))),
            ("xi", &xi, SuperShape::new((0, n_s), (r, 0))),
            ("v", &v, SuperShape::new((0, n_s), (0, s))),
        ];
        for (name, block, shape) in expected {
            if block.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "block {name} should be {shape}, got {}",
                    block.shape()
                )));
            }
            if !same_ring(block.ring(), u.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(NCoordinates { profile, u, eta, xi, v })
    }

    pub fn zero(profile: BlockProfile, ring: &Ring) -> Self {
        let [r, m_r, n_s, s] = profile.block_sizes();
        NCoordinates {
            profile,
            u: SuperMatrix::zeros(ring, SuperShape::new((m_r, 0), (r, 0))),
            eta: SuperMatrix::zeros(ring, SuperShape::new((m_r, 0), (0, s))),
            xi: SuperMatrix::zeros(ring, SuperShape::new((0, n_s), (r, 0))),
            v: SuperMatrix::zeros(ring, SuperShape::new((0, n_s), (0, s))),
        }
    }

    /// Reads `[[u, η], [ξ, v]]` from a `(m−r|n−s) × (r|s)` matrix.
    pub fn from_chart_block(profile: BlockProfile, x: &SuperMatrix) -> Result<Self> {
        let [r, m_r, n_s, s] = profile.block_sizes();
        if x.shape() != SuperShape::new((m_r, n_s), (r, s)) {
            return Err(Error::ShapeMismatch(format!("chart block has shape {}", x.shape())));
        }
        let top: Vec<usize> = (0..m_r).collect();
        let bottom: Vec<usize> = (m_r..m_r + n_s).collect();
        let left: Vec<usize> = (0..r).collect();
        let right: Vec<usize> = (r..r + s).collect();
        Self::new(
            profile,
            x.select(&top, &left),
            x.select(&top, &right),
            x.select(&bottom, &left),
            x.select(&bottom, &right),
        )
    }

    /// `[[u, η], [ξ, v]]` as one `(m−r|n−s) × (r|s)` matrix.
    pub fn chart_block(&self) -> SuperMatrix {
        SuperMatrix::from_blocks(self.ring(), &[vec![&self.u, &self.eta], vec![&self.xi, &self.v]])
            .expect("coordinate blocks fit")
    }

    pub fn profile(&self) -> BlockProfile {
        self.profile
    }

    pub fn ring(&self) -> &Ring {
        self.u.ring()
    }

    pub fn u(&self) -> &SuperMatrix {
        &self.u
    }

    pub fn eta(&self) -> &SuperMatrix {
        &self.eta
    }

    pub fn xi(&self) -> &SuperMatrix {
        &self.xi
    }

    pub fn v(&self) -> &SuperMatrix {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.eta.is_zero() && self.xi.is_zero() && self.v.is_zero()
    }

    pub fn neg(&self) -> Self {
        NCoordinates {
            profile: self.profile,
            u: self.u.neg(),
            eta: self.eta.neg(),
            xi: self.xi.neg(),
            v: self.v.neg(),
        }
    }

    /// The `N`-shaped matrix with identity diagonal blocks.
    pub fn assemble(&self) -> SuperMatrix {
        let bp = self.profile;
        let ring = self.ring().clone();
        SuperMatrix::from_fn(bp.ambient_shape(), &ring, |i, j| {
            let ((bi, li), (bj, lj)) = (bp.locate(i), bp.locate(j));
            match (bi, bj) {
                _ if i == j => SuperElement::one(&ring),
                (1, 0) => self.u.get(li, lj).clone(),
                (1, 3) => self.eta.get(li, lj).clone(),
                (2, 0) => self.xi.get(li, lj).clone(),
                (2, 3) => self.v.get(li, lj).clone(),
                _ => SuperElement::zero(&ring),
            }
        })
        .expect("N-shaped matrix respects the parity pattern")
    }
}

/// Membership in the stabilizer `P(R)` of the standard subspace: blocks
/// (2,1), (3,1), (2,4) and (3,4) vanish.
pub fn standard_parabolic_member(g: &SuperMatrix, bp: &BlockProfile) -> Result<bool> {
    bp.check_square(g)?;
    Ok([(2, 1), (3, 1), (2, 4), (3, 4)]
        .iter()
        .all(|&(i, j)| block(g, bp, i, j).is_zero()))
}

/// Membership in `N(R)`: identity diagonal blocks, free blocks at (2,1),
/// (2,4), (3,1), (3,4), zero elsewhere.
pub fn n_member(g: &SuperMatrix, bp: &BlockProfile) -> Result<bool> {
    bp.check_square(g)?;
    for i in 1..=4 {
        for j in 1..=4 {
            let b = block(g, bp, i, j);
            let ok = match (i, j) {
                _ if i == j => b.is_identity(),
                (2, 1) | (2, 4) | (3, 1) | (3, 4) => true,
                _ => b.is_zero(),
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The big cell: bodies of `g₁₁` and `g₄₄` invertible.
pub fn in_big_cell(g: &SuperMatrix, bp: &BlockProfile) -> Result<bool> {
    bp.check_square(g)?;
    let g11 = block(g, bp, 1, 1).body();
    let g44 = block(g, bp, 4, 4).body();
    Ok(even_det(&g11)?.is_invertible() && even_det(&g44)?.is_invertible())
}

/// Factorization `g = assemble(n) · p` with `p ∈ P(R)`.
///
/// Rows 2 and 3 of `n · p = g`, restricted to the columns of blocks 1 and 4,
/// read `[[u, η], [ξ, v]] · M = [[g₂₁, γ₂₄], [γ₃₁, g₃₄]]` where `M` is the
/// submatrix of `g` on rows and columns of blocks 1 and 4. `M` is invertible
/// exactly on the big cell; its Schur inverse only inverts `g₄₄` and
/// `g₁₁ − γ₁₄ g₄₄⁻¹ γ₄₁`. The parabolic factor is then `n⁻¹ g`, and `N` is
/// abelian with `n⁻¹ = assemble(−coordinates)`.
pub fn normal_form(g: &SuperMatrix, bp: &BlockProfile) -> Result<(NCoordinates, SuperMatrix)> {
    if !in_big_cell(g, bp)? {
        return Err(Error::NotInBigCell("body of g11 or g44 is singular".into()));
    }
    if !g.is_invertible() {
        return Err(Error::NotInvertible("g has a singular body".into()));
    }
    let sub = bp.subspace_indices();
    let comp = bp.complement_indices();
    let frame = g.select(&sub, &sub);
    let rest = g.select(&comp, &sub);
    let coords = NCoordinates::from_chart_block(*bp, &rest.mul(&frame.inverse()?)?)?;
    let p = coords.neg().assemble().mul(g)?;
    debug_assert!(standard_parabolic_member(&p, bp).unwrap_or(false));
    Ok((coords, p))
}

/// Whether `g₁ P(R) = g₂ P(R)`.
pub fn cosets_equal(g1: &SuperMatrix, g2: &SuperMatrix, bp: &BlockProfile) -> Result<bool> {
    bp.check_square(g1)?;
    bp.check_square(g2)?;
    standard_parabolic_member(&g1.inverse()?.mul(g2)?, bp)
}
