//! Seeded random generation of elements, supermatrices, parabolic and
//! big-cell elements, and chart coordinates.
//!
//! Coefficients are small rationals with bounded numerator and denominator.
//! Invertible matrices are produced as `B · (I + S)` with `B` a random
//! invertible numeric body and `S` a nilpotent, pattern-respecting soul.
//! Every draw is a pure function of the generator state, and
//! [`trial_rng`] derives an independent state from `(seed, stream, trial)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flag_quotient::{block, in_big_cell, BlockProfile, NCoordinates};
use crate::scalar::{self, Scalar};
use crate::superalgebra::{Monomial, Parity, Ring, SuperElement};
use crate::supermatrix::{SuperMatrix, SuperShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Numerators lie in `[-coeff, coeff]`, denominators in `[1, coeff]`.
    pub coeff: i64,
    /// Maximum number of soul terms per entry.
    pub terms: usize,
    /// Maximum exponent of an even generator in a random term.
    pub degree: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { coeff: 3, terms: 3, degree: 2 }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for one trial of one property stream.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let key = splitmix(splitmix(splitmix(seed) ^ stream) ^ trial);
    ChaCha8Rng::seed_from_u64(key)
}

pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let bound = bound.max(1);
    BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(rng.gen_range(1..=bound)))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    loop {
        let q = rational(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A Gaussian rational, real three times out of four.
pub fn coefficient<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    let re = rational(rng, bound);
    let im = if rng.gen_ratio(1, 4) { rational(rng, bound) } else { BigRational::zero() };
    scalar::from_parts(re, im)
}

pub fn nonzero_coefficient<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    loop {
        let c = coefficient(rng, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

fn odd_subset<R: Rng>(rng: &mut R, q: usize, degree: usize) -> u64 {
    let mut idx: Vec<usize> = (0..q).collect();
    idx.shuffle(rng);
    idx[..degree].iter().fold(0, |acc, &i| acc | 1 << i)
}

fn random_exps<R: Rng>(rng: &mut R, p: usize, degree: u32) -> Vec<u32> {
    (0..p).map(|_| if degree == 0 { 0 } else { rng.gen_range(0..=degree) }).collect()
}

/// Random nilpotent element of the given parity: every term has odd degree
/// at least one. Zero when the ring has too few odd generators.
pub fn soul<R: Rng>(rng: &mut R, ring: &Ring, parity: Parity, bounds: &Bounds) -> SuperElement {
    let q = ring.num_odd();
    let degrees: Vec<usize> = (1..=q).filter(|d| Parity::from_degree(*d) == parity).collect();
    if degrees.is_empty() {
        return SuperElement::zero(ring);
    }
    let count = rng.gen_range(0..=bounds.terms);
    let terms: Vec<(Monomial, Scalar)> = (0..count)
        .map(|_| {
            let d = *degrees.choose(rng).expect("nonempty");
            let m = Monomial { exps: random_exps(rng, ring.num_even(), bounds.degree.min(1)), odd: odd_subset(rng, q, d) };
            (m, nonzero_coefficient(rng, bounds.coeff))
        })
        .collect();
    SuperElement::from_terms(ring, terms)
}

/// Random homogeneous element; its body may involve the even generators.
pub fn element<R: Rng>(rng: &mut R, ring: &Ring, parity: Parity, bounds: &Bounds) -> SuperElement {
    let s = soul(rng, ring, parity, bounds);
    if parity.is_odd() {
        return s;
    }
    let count = rng.gen_range(0..=bounds.terms);
    let body = SuperElement::from_terms(
        ring,
        (0..count).map(|_| {
            (Monomial { exps: random_exps(rng, ring.num_even(), bounds.degree), odd: 0 }, coefficient(rng, bounds.coeff))
        }),
    );
    &body + &s
}

/// Random even element with a nonzero constant body: a unit.
pub fn unit<R: Rng>(rng: &mut R, ring: &Ring, bounds: &Bounds) -> SuperElement {
    let c = SuperElement::constant(ring, nonzero_coefficient(rng, bounds.coeff));
    &c + &soul(rng, ring, Parity::Even, bounds)
}

/// Random pattern-respecting matrix: even entries are a random constant
/// body plus an even soul, odd entries a random odd soul.
pub fn supermatrix<R: Rng>(rng: &mut R, ring: &Ring, shape: SuperShape, bounds: &Bounds) -> SuperMatrix {
    SuperMatrix::from_fn(shape, ring, |i, j| match shape.entry_parity(i, j) {
        Parity::Even => {
            let c = SuperElement::constant(ring, coefficient(rng, bounds.coeff));
            &c + &soul(rng, ring, Parity::Even, bounds)
        }
        Parity::Odd => soul(rng, ring, Parity::Odd, bounds),
    })
    .expect("pattern by construction")
}

/// Nilpotent pattern-respecting matrix (every entry has zero body).
pub fn nilpotent<R: Rng>(rng: &mut R, ring: &Ring, shape: SuperShape, bounds: &Bounds) -> SuperMatrix {
    SuperMatrix::from_fn(shape, ring, |i, j| soul(rng, ring, shape.entry_parity(i, j), bounds))
        .expect("pattern by construction")
}

/// Random invertible `k × k` numeric matrix (as constants of `ring`).
fn numeric_invertible<R: Rng>(rng: &mut R, ring: &Ring, k: usize, odd: bool, bounds: &Bounds) -> SuperMatrix {
    let shape = if odd { SuperShape::new((0, k), (0, k)) } else { SuperShape::new((k, 0), (k, 0)) };
    loop {
        let m = SuperMatrix::from_fn(shape, ring, |_, _| SuperElement::constant(ring, coefficient(rng, bounds.coeff)))
            .expect("even entries");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random numeric, block-diagonal invertible body of shape `(m|n)`.
pub fn invertible_body<R: Rng>(rng: &mut R, ring: &Ring, m: usize, n: usize, bounds: &Bounds) -> SuperMatrix {
    let a = numeric_invertible(rng, ring, m, false, bounds);
    let d = numeric_invertible(rng, ring, n, true, bounds);
    let b = SuperMatrix::zeros(ring, SuperShape::new((m, 0), (0, n)));
    let c = SuperMatrix::zeros(ring, SuperShape::new((0, n), (m, 0)));
    SuperMatrix::from_blocks(ring, &[vec![&a, &b], vec![&c, &d]]).expect("block grid")
}

/// `B · (I + S)`: invertible by construction.
pub fn invertible<R: Rng>(rng: &mut R, ring: &Ring, m: usize, n: usize, bounds: &Bounds) -> SuperMatrix {
    let body = invertible_body(rng, ring, m, n, bounds);
    let s = nilpotent(rng, ring, SuperShape::square(m, n), bounds);
    let one_plus_s = SuperMatrix::identity(ring, m, n).add(&s).expect("same shape");
    body.mul(&one_plus_s).expect("same shape")
}

/// Random element of the standard parabolic `P(R)`.
pub fn parabolic<R: Rng>(rng: &mut R, ring: &Ring, bp: &BlockProfile, bounds: &Bounds) -> SuperMatrix {
    loop {
        let g = invertible(rng, ring, bp.m, bp.n, bounds);
        let p = zero_blocks(&g, bp, &[(2, 1), (3, 1), (2, 4), (3, 4)]);
        if p.is_invertible() {
            return p;
        }
    }
}

/// Copy of `g` with the listed (1-based) blocks set to zero.
pub fn zero_blocks(g: &SuperMatrix, bp: &BlockProfile, blocks: &[(usize, usize)]) -> SuperMatrix {
    let ring = g.ring().clone();
    SuperMatrix::from_fn(g.shape(), &ring, |i, j| {
        let (bi, bj) = (bp.locate(i).0 + 1, bp.locate(j).0 + 1);
        if blocks.contains(&(bi, bj)) {
            SuperElement::zero(&ring)
        } else {
            g.get(i, j).clone()
        }
    })
    .expect("zeros keep the pattern")
}

/// Random invertible element of the big cell, by rejection.
pub fn big_cell<R: Rng>(rng: &mut R, ring: &Ring, bp: &BlockProfile, bounds: &Bounds) -> SuperMatrix {
    loop {
        let g = invertible(rng, ring, bp.m, bp.n, bounds);
        if in_big_cell(&g, bp).expect("square") {
            return g;
        }
    }
}

/// Invertible matrices spread over several regimes: generic, row-permuted
/// (often off the big cell), parabolic, and parabolic with a nilpotent
/// perturbation in one of the blocks that must vanish on `P`.
pub fn mixed_invertible<R: Rng>(rng: &mut R, ring: &Ring, bp: &BlockProfile, bounds: &Bounds) -> SuperMatrix {
    match rng.gen_range(0..4) {
        0 => invertible(rng, ring, bp.m, bp.n, bounds),
        1 => {
            let g = invertible(rng, ring, bp.m, bp.n, bounds);
            let mut even: Vec<usize> = (0..bp.m).collect();
            let mut odd: Vec<usize> = (bp.m..bp.m + bp.n).collect();
            even.shuffle(rng);
            odd.shuffle(rng);
            let perm: Vec<usize> = even.into_iter().chain(odd).collect();
            let ring = ring.clone();
            SuperMatrix::from_fn(g.shape(), &ring, |i, j| g.get(perm[i], j).clone()).expect("rows keep parity")
        }
        2 => parabolic(rng, ring, bp, bounds),
        _ => {
            let p = parabolic(rng, ring, bp, bounds);
            let candidates: Vec<(usize, usize)> = [(2, 1), (3, 1), (2, 4), (3, 4)]
                .into_iter()
                .filter(|&(i, j)| block(&p, bp, i, j).num_rows() * block(&p, bp, i, j).num_cols() > 0)
                .collect();
            let Some(&(bi, bj)) = candidates.choose(rng) else {
                return p;
            };
            let ring = ring.clone();
            let shape = p.shape();
            let mut bumped = false;
            let out = SuperMatrix::from_fn(shape, &ring, |i, j| {
                let here = (bp.locate(i).0 + 1, bp.locate(j).0 + 1);
                if here == (bi, bj) && !bumped {
                    bumped = true;
                    let parity = shape.entry_parity(i, j);
                    let mut e = soul(rng, &ring, parity, bounds);
                    if e.is_zero() {
                        e = first_nonzero_soul(&ring, parity);
                    }
                    &p.get(i, j).clone() + &e
                } else {
                    p.get(i, j).clone()
                }
            })
            .expect("soul keeps the pattern");
            out
        }
    }
}

fn first_nonzero_soul(ring: &Ring, parity: Parity) -> SuperElement {
    let d = if parity.is_odd() { 1 } else { 2 };
    if ring.num_odd() < d {
        return SuperElement::zero(ring);
    }
    SuperElement::monomial(ring, Monomial { exps: vec![0; ring.num_even()], odd: (1 << d) - 1 }, scalar::one())
}

/// Random chart coordinates: `u`, `v` with random bodies, `η`, `ξ` odd.
pub fn ncoordinates<R: Rng>(rng: &mut R, ring: &Ring, bp: &BlockProfile, bounds: &Bounds) -> NCoordinates {
    let [r, m_r, n_s, s] = bp.block_sizes();
    NCoordinates::new(
        *bp,
        supermatrix(rng, ring, SuperShape::new((m_r, 0), (r, 0)), bounds),
        supermatrix(rng, ring, SuperShape::new((m_r, 0), (0, s)), bounds),
        supermatrix(rng, ring, SuperShape::new((0, n_s), (r, 0)), bounds),
        supermatrix(rng, ring, SuperShape::new((0, n_s), (0, s)), bounds),
    )
    .expect("shapes by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag_quotient::standard_parabolic_member;
    use crate::superalgebra::SuperRingSpec;

    #[test]
    fn deterministic_streams() {
        let ring = SuperRingSpec::grassmann(4).unwrap();
        let b = Bounds::default();
        let a = invertible(&mut trial_rng(7, 1, 3), &ring, 2, 2, &b);
        let c = invertible(&mut trial_rng(7, 1, 3), &ring, 2, 2, &b);
        assert_eq!(a, c);
        let d = invertible(&mut trial_rng(7, 1, 4), &ring, 2, 2, &b);
        assert_ne!(a, d);
    }

    #[test]
    fn generated_objects_have_their_properties() {
        let ring = SuperRingSpec::grassmann(4).unwrap();
        let b = Bounds::default();
        let bp = BlockProfile::new(2, 2, 1, 1).unwrap();
        for trial in 0..20 {
            let mut rng = trial_rng(1, 0, trial);
            assert!(invertible(&mut rng, &ring, 2, 2, &b).is_invertible());
            let p = parabolic(&mut rng, &ring, &bp, &b);
            assert!(standard_parabolic_member(&p, &bp).unwrap());
            assert!(in_big_cell(&big_cell(&mut rng, &ring, &bp, &b), &bp).unwrap());
            assert!(mixed_invertible(&mut rng, &ring, &bp, &b).is_invertible());
            let e = soul(&mut rng, &ring, Parity::Odd, &b);
            assert!(e.has_parity(Parity::Odd) && e.body().is_zero());
        }
    }
}
