//! T-points of the super-Grassmannian `Gr(r|s; m|n)` as framed spans, the
//! `GL(m|n)` action on them, the orbit map of the standard point, and the
//! chart `N(R) ≅ π(U)(R)` of the big cell.
//!
//! A point is a full-rank `(m|n) × (r|s)` span matrix, taken up to right
//! multiplication by `GL(r|s)(R)`. Equality is decided by normalizing both
//! spans on one common frame: a choice of `r` even and `s` odd rows whose
//! submatrix has invertible body.

use crate::error::{Error, Result};
use crate::flag_quotient::{BlockProfile, NCoordinates};
use crate::superalgebra::{same_ring, Ring, SuperElement};
use crate::supermatrix::SuperMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannianPoint {
    profile: BlockProfile,
    span: SuperMatrix,
}

impl GrassmannianPoint {
    /// Checks the span shape and that some frame certifies full rank.
    pub fn new(profile: BlockProfile, span: SuperMatrix) -> Result<Self> {
        profile.check()?;
        if span.shape() != profile.span_shape() {
            return Err(Error::ShapeMismatch(format!(
                "span should be {}, got {}",
                profile.span_shape(),
                span.shape()
            )));
        }
        if find_frame(&profile, &span).is_none() {
            return Err(Error::RankDeficient("no choice of rows has an invertible body".into()));
        }
        Ok(GrassmannianPoint { profile, span })
    }

    pub fn profile(&self) -> BlockProfile {
        self.profile
    }

    pub fn span(&self) -> &SuperMatrix {
        &self.span
    }

    pub fn ring(&self) -> &Ring {
        self.span.ring()
    }

    /// The frame `r` even + `s` odd rows used to normalize this span; the
    /// first valid one in lexicographic order.
    pub fn frame(&self) -> Vec<usize> {
        find_frame(&self.profile, &self.span).expect("checked at construction")
    }
}

/// Increasing `k`-subsets of `range`, lexicographic.
fn subsets(range: std::ops::Range<usize>, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, end: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..end {
            if end - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, end, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(range.start, range.end, k, &mut Vec::new(), &mut out);
    out
}

/// Candidate frames: even-row subsets outermost, odd-row subsets inner.
fn frames(bp: &BlockProfile) -> impl Iterator<Item = Vec<usize>> {
    let evens = subsets(0..bp.m, bp.r);
    let odds = subsets(bp.m..bp.m + bp.n, bp.s);
    evens.into_iter().flat_map(move |e| {
        odds.clone().into_iter().map(move |o| e.iter().chain(&o).copied().collect())
    })
}

fn all_cols(span: &SuperMatrix) -> Vec<usize> {
    (0..span.num_cols()).collect()
}

fn find_frame(bp: &BlockProfile, span: &SuperMatrix) -> Option<Vec<usize>> {
    let cols = all_cols(span);
    frames(bp).find(|rows| span.select(rows, &cols).is_invertible())
}

/// `span · (span restricted to rows)⁻¹`, or `None` if that square is singular.
fn normalize(span: &SuperMatrix, rows: &[usize]) -> Result<Option<SuperMatrix>> {
    let frame = span.select(rows, &all_cols(span));
    if !frame.is_invertible() {
        return Ok(None);
    }
    Ok(Some(span.mul(&frame.inverse()?)?))
}

/// The subspace spanned by blocks 1 and 4 of the standard basis.
pub fn standard_point(bp: &BlockProfile, ring: &Ring) -> Result<GrassmannianPoint> {
    bp.check()?;
    let sub = bp.subspace_indices();
    let span = SuperMatrix::from_fn(bp.span_shape(), ring, |i, j| {
        if sub[j] == i {
            SuperElement::one(ring)
        } else {
            SuperElement::zero(ring)
        }
    })?;
    GrassmannianPoint::new(*bp, span)
}

/// Whether two framed spans define the same point: `span₁ · h = span₂` for
/// some `h ∈ GL(r|s)(R)`.
pub fn points_equal(a: &GrassmannianPoint, b: &GrassmannianPoint) -> Result<bool> {
    if a.profile != b.profile {
        return Err(Error::ShapeMismatch(format!("profiles {} and {}", a.profile, b.profile)));
    }
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let rows = a.frame();
    let na = normalize(&a.span, &rows)?.expect("frame of a is invertible");
    // If b = a·h then b's square on the same rows is (a's square)·h, hence invertible.
    match normalize(&b.span, &rows)? {
        Some(nb) => Ok(na == nb),
        None => Ok(false),
    }
}

/// `g · P`.
pub fn act(g: &SuperMatrix, point: &GrassmannianPoint) -> Result<GrassmannianPoint> {
    let bp = point.profile;
    if g.shape() != bp.ambient_shape() {
        return Err(Error::ShapeMismatch(format!(
            "cannot act with {} on a point of {}|{}",
            g.shape(),
            bp.m,
            bp.n
        )));
    }
    if !g.is_invertible() {
        return Err(Error::NotInvertible("acting matrix has a singular body".into()));
    }
    GrassmannianPoint::new(bp, g.mul(&point.span)?)
}

/// The orbit map `g ↦ g · p` of the standard point.
pub fn orbit_map(g: &SuperMatrix, bp: &BlockProfile) -> Result<GrassmannianPoint> {
    act(g, &standard_point(bp, g.ring())?)
}

/// `ρ_p(n)`: the span of the block-1 and block-4 columns of `assemble(n)`.
pub fn chart_up(coords: &NCoordinates) -> Result<GrassmannianPoint> {
    let bp = coords.profile();
    let g = coords.assemble();
    let sub = bp.subspace_indices();
    let rows: Vec<usize> = (0..g.num_rows()).collect();
    GrassmannianPoint::new(bp, g.select(&rows, &sub))
}

/// Inverse chart on the big cell of `Gr`.
pub fn chart_down(point: &GrassmannianPoint) -> Result<NCoordinates> {
    let bp = point.profile;
    let normalized = normalize(&point.span, &bp.subspace_indices())?.ok_or_else(|| {
        Error::NotInBigCell("rows of blocks 1 and 4 have a singular body".into())
    })?;
    let cols = all_cols(&normalized);
    NCoordinates::from_chart_block(bp, &normalized.select(&bp.complement_indices(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag_quotient::standard_parabolic_member;
    use crate::superalgebra::SuperRingSpec;
    use crate::supermatrix::SuperShape;

    fn ring() -> Ring {
        SuperRingSpec::grassmann(3).unwrap()
    }

    fn t(r: &Ring, i: usize) -> SuperElement {
        SuperElement::var(r, &format!("t{i}")).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(0..3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2..4, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(0..1, 2).is_empty());
    }

    #[test]
    fn standard_point_examples() {
        let r = ring();
        let bp = BlockProfile::new(1, 1, 1, 0).unwrap();
        let p = standard_point(&bp, &r).unwrap();
        assert!(p.span().get(0, 0).is_one());
        assert!(p.span().get(1, 0).is_zero());

        let bp = BlockProfile::new(2, 2, 1, 1).unwrap();
        let p = standard_point(&bp, &r).unwrap();
        assert!(p.span().get(0, 0).is_one());
        assert!(p.span().get(3, 1).is_one());
        assert_eq!(p.span().entries().iter().filter(|e| !e.is_zero()).count(), 2);
        assert!(points_equal(&p, &p).unwrap());
        assert_eq!(p.frame(), vec![0, 3]);
    }

    #[test]
    fn chart_examples() {
        let r = ring();
        let bp = BlockProfile::new(1, 1, 1, 0).unwrap();
        let span = SuperMatrix::validate(bp.span_shape(), &r, vec![vec![SuperElement::one(&r)], vec![t(&r, 2)]]).unwrap();
        let point = GrassmannianPoint::new(bp, span.clone()).unwrap();
        let coords = chart_down(&point).unwrap();
        assert_eq!(coords.xi().get(0, 0), &t(&r, 2));
        assert_eq!(chart_up(&coords).unwrap().span(), &span);
        assert!(!points_equal(&point, &standard_point(&bp, &r).unwrap()).unwrap());
        assert!(chart_down(&standard_point(&bp, &r).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn off_big_cell_point() {
        // Gr(1|0; 2|0): the line through e2 has a frame at row 1 only.
        let r = ring();
        let bp = BlockProfile::new(2, 0, 1, 0).unwrap();
        let span = SuperMatrix::validate(
            bp.span_shape(),
            &r,
            vec![vec![&t(&r, 1) * &t(&r, 2)], vec![SuperElement::from_int(&r, 3)]],
        )
        .unwrap();
        let point = GrassmannianPoint::new(bp, span).unwrap();
        assert_eq!(point.frame(), vec![1]);
        assert!(matches!(chart_down(&point), Err(Error::NotInBigCell(_))));
        assert!(points_equal(&point, &point).unwrap());
        assert!(!points_equal(&point, &standard_point(&bp, &r).unwrap()).unwrap());
    }

    #[test]
    fn rank_deficient_span() {
        let r = ring();
        let bp = BlockProfile::new(1, 1, 1, 0).unwrap();
        let span = SuperMatrix::validate(bp.span_shape(), &r, vec![vec![&t(&r, 1) * &t(&r, 2)], vec![t(&r, 3)]]).unwrap();
        assert!(matches!(GrassmannianPoint::new(bp, span), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn parabolic_element_fixes_standard_point() {
        let r = ring();
        let bp = BlockProfile::new(1, 1, 1, 0).unwrap();
        let one = SuperElement::one(&r);
        let g = SuperMatrix::validate(
            SuperShape::square(1, 1),
            &r,
            vec![vec![SuperElement::from_int(&r, 2), t(&r, 1)], vec![SuperElement::zero(&r), &one + &(&t(&r, 2) * &t(&r, 3))]],
        )
        .unwrap();
        assert!(standard_parabolic_member(&g, &bp).unwrap());
        let p0 = standard_point(&bp, &r).unwrap();
        assert!(points_equal(&act(&g, &p0).unwrap(), &p0).unwrap());
        assert!(points_equal(&act(&SuperMatrix::identity(&r, 1, 1), &p0).unwrap(), &p0).unwrap());
    }
}
