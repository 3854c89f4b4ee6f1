//! JSON documents for elements, matrices, N-coordinates, Grassmannian
//! points, presentations and rational points.
//!
//! All numbers are exact strings (`"num/den"`); terms are written in the
//! canonical monomial order, so encoding a decoded canonical document
//! reproduces it byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_quotient::{BlockProfile, NCoordinates};
use crate::grassmannian::GrassmannianPoint;
use crate::scalar::{self, Scalar};
use crate::smoothness::{total_ring, Presentation, RationalPoint, SmoothnessVerdict};
use crate::superalgebra::{Monomial, Ring, SuperElement, SuperRingSpec};
use crate::supermatrix::{SuperMatrix, SuperShape};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDoc {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: CoeffDoc,
    pub exp: Vec<u32>,
    pub odd: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub ring: RingDoc,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

/// `ring` is always written; it is only required on input when `entries`
/// is empty and the ring cannot be read off an entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub shape: ShapeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDoc>,
    pub entries: Vec<Vec<ElementDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NCoordinatesDoc {
    pub u: MatrixDoc,
    pub eta: MatrixDoc,
    pub xi: MatrixDoc,
    pub v: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub profile: BlockProfile,
    pub span: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub base: RingDoc,
    pub fiber: RingDoc,
    pub relations_even: Vec<ElementDoc>,
    pub relations_odd: Vec<ElementDoc>,
}

/// A coordinate value: `"num/den"` for a real value, or a full coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Real(String),
    Complex(CoeffDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalPointDoc {
    pub values: BTreeMap<String, ValueDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub smooth: bool,
    pub etale: bool,
    pub even_rank: usize,
    pub odd_rank: usize,
    pub relative_dimension: Option<[usize; 2]>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Reuses one `Arc` per distinct ring while decoding a document.
#[derive(Default)]
pub struct RingCache {
    rings: Vec<Ring>,
}

impl RingCache {
    pub fn ring(&mut self, doc: &RingDoc) -> Result<Ring> {
        if let Some(r) = self.rings.iter().find(|r| r.even_vars() == doc.even && r.odd_vars() == doc.odd) {
            return Ok(Arc::clone(r));
        }
        let r = SuperRingSpec::new(doc.even.clone(), doc.odd.clone())?;
        self.rings.push(r.clone());
        Ok(r)
    }
}

pub fn encode_ring(r: &Ring) -> RingDoc {
    RingDoc { even: r.even_vars().to_vec(), odd: r.odd_vars().to_vec() }
}

pub fn encode_scalar(c: &Scalar) -> CoeffDoc {
    CoeffDoc { re: scalar::format_rational(&c.re), im: scalar::format_rational(&c.im) }
}

pub fn decode_scalar(doc: &CoeffDoc) -> Result<Scalar> {
    let re = scalar::parse_rational(&doc.re).ok_or_else(|| malformed(format!("bad rational `{}`", doc.re)))?;
    let im = scalar::parse_rational(&doc.im).ok_or_else(|| malformed(format!("bad rational `{}`", doc.im)))?;
    Ok(scalar::from_parts(re, im))
}

pub fn encode_element(e: &SuperElement) -> ElementDoc {
    ElementDoc {
        ring: encode_ring(e.ring()),
        terms: e
            .terms()
            .map(|(m, c)| TermDoc { coeff: encode_scalar(c), exp: m.exps.clone(), odd: m.odd_indices().collect() })
            .collect(),
    }
}

pub fn decode_element(doc: &ElementDoc, cache: &mut RingCache) -> Result<SuperElement> {
    let ring = cache.ring(&doc.ring)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in &doc.terms {
        if t.exp.len() != ring.num_even() {
            return Err(malformed(format!("exponent vector {:?} has the wrong length", t.exp)));
        }
        if t.odd.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed(format!("odd indices {:?} are not strictly increasing", t.odd)));
        }
        if t.odd.iter().any(|&i| i >= ring.num_odd()) {
            return Err(malformed(format!("odd index out of range in {:?}", t.odd)));
        }
        let odd = t.odd.iter().fold(0u64, |acc, &i| acc | 1 << i);
        terms.push((Monomial { exps: t.exp.clone(), odd }, decode_scalar(&t.coeff)?));
    }
    Ok(SuperElement::from_terms(&ring, terms))
}

pub fn encode_matrix(m: &SuperMatrix) -> MatrixDoc {
    let s = m.shape();
    MatrixDoc {
        shape: ShapeDoc { rows: [s.rows.0, s.rows.1], cols: [s.cols.0, s.cols.1] },
        ring: Some(encode_ring(m.ring())),
        entries: m.rows().map(|row| row.iter().map(encode_element).collect()).collect(),
    }
}

pub fn decode_matrix(doc: &MatrixDoc, cache: &mut RingCache) -> Result<SuperMatrix> {
    let shape = SuperShape::new((doc.shape.rows[0], doc.shape.rows[1]), (doc.shape.cols[0], doc.shape.cols[1]));
    let ring = match (&doc.ring, doc.entries.iter().flatten().next()) {
        (Some(r), _) => cache.ring(r)?,
        (None, Some(e)) => cache.ring(&e.ring)?,
        (None, None) => return Err(malformed("empty matrix needs an explicit ring")),
    };
    let rows = doc
        .entries
        .iter()
        .map(|row| row.iter().map(|e| decode_element(e, cache)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SuperMatrix::validate(shape, &ring, rows)
}

pub fn encode_ncoordinates(c: &NCoordinates) -> NCoordinatesDoc {
    NCoordinatesDoc {
        u: encode_matrix(c.u()),
        eta: encode_matrix(c.eta()),
        xi: encode_matrix(c.xi()),
        v: encode_matrix(c.v()),
    }
}

pub fn decode_ncoordinates(doc: &NCoordinatesDoc, profile: BlockProfile, cache: &mut RingCache) -> Result<NCoordinates> {
    NCoordinates::new(
        profile,
        decode_matrix(&doc.u, cache)?,
        decode_matrix(&doc.eta, cache)?,
        decode_matrix(&doc.xi, cache)?,
        decode_matrix(&doc.v, cache)?,
    )
}

pub fn encode_point(p: &GrassmannianPoint) -> PointDoc {
    PointDoc { profile: p.profile(), span: encode_matrix(p.span()) }
}

pub fn decode_point(doc: &PointDoc, cache: &mut RingCache) -> Result<GrassmannianPoint> {
    GrassmannianPoint::new(doc.profile, decode_matrix(&doc.span, cache)?)
}

pub fn encode_presentation(p: &Presentation) -> PresentationDoc {
    PresentationDoc {
        base: encode_ring(p.base()),
        fiber: encode_ring(p.fiber()),
        relations_even: p.even_relations().iter().map(encode_element).collect(),
        relations_odd: p.odd_relations().iter().map(encode_element).collect(),
    }
}

pub fn decode_presentation(doc: &PresentationDoc, cache: &mut RingCache) -> Result<Presentation> {
    let base = cache.ring(&doc.base)?;
    let fiber = cache.ring(&doc.fiber)?;
    let total = total_ring(&base, &fiber)?;
    let total_doc = encode_ring(&total);
    let decode = |docs: &[ElementDoc], cache: &mut RingCache| -> Result<Vec<SuperElement>> {
        docs.iter()
            .map(|d| {
                if d.ring != total_doc {
                    return Err(malformed("relations must live in the ring base ⊗ fiber"));
                }
                decode_element(d, cache)
            })
            .collect()
    };
    let even = decode(&doc.relations_even, cache)?;
    let odd = decode(&doc.relations_odd, cache)?;
    Presentation::new(&base, &fiber, even, odd)
}

pub fn encode_rational_point(p: &RationalPoint) -> RationalPointDoc {
    RationalPointDoc {
        values: p
            .values
            .iter()
            .map(|(k, v)| {
                let doc = if num_traits::Zero::is_zero(&v.im) {
                    ValueDoc::Real(scalar::format_rational(&v.re))
                } else {
                    ValueDoc::Complex(encode_scalar(v))
                };
                (k.clone(), doc)
            })
            .collect(),
    }
}

pub fn decode_rational_point(doc: &RationalPointDoc) -> Result<RationalPoint> {
    let mut values = BTreeMap::new();
    for (k, v) in &doc.values {
        let value = match v {
            ValueDoc::Real(s) => {
                let q = scalar::parse_rational(s).ok_or_else(|| malformed(format!("bad rational `{s}`")))?;
                scalar::from_parts(q, num_traits::Zero::zero())
            }
            ValueDoc::Complex(c) => decode_scalar(c)?,
        };
        values.insert(k.clone(), value);
    }
    Ok(RationalPoint { values })
}

pub fn encode_verdict(v: &SmoothnessVerdict) -> VerdictDoc {
    VerdictDoc {
        smooth: v.smooth,
        etale: v.is_etale(),
        even_rank: v.even_rank,
        odd_rank: v.odd_rank,
        relative_dimension: v.relative_dimension.map(|(a, b)| [a, b]),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn sample_element() -> SuperElement {
        let r = SuperRingSpec::new(["x"], ["a", "b"]).unwrap();
        let x = SuperElement::var(&r, "x").unwrap();
        let ab = &SuperElement::var(&r, "b").unwrap() * &SuperElement::var(&r, "a").unwrap();
        &(&x.pow(2) + &ab.scale(&scalar::from_ratio(-3, 4))) + &SuperElement::constant(&r, scalar::from_parts(BigRational::from_integer(1.into()), BigRational::from_integer(2.into())))
    }

    #[test]
    fn element_document_shape() {
        let doc = encode_element(&sample_element());
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains(r#""coeff":{"re":"3/4","im":"0/1"},"exp":[0],"odd":[0,1]"#), "{text}");
        assert!(text.contains(r#""re":"1/1","im":"2/1""#));
        let back = decode_element(&doc, &mut RingCache::default()).unwrap();
        assert_eq!(back, sample_element());
    }

    #[test]
    fn rejects_unsorted_odd_indices() {
        let mut doc = encode_element(&sample_element());
        doc.terms[1].odd = vec![1, 0];
        assert!(matches!(decode_element(&doc, &mut RingCache::default()), Err(Error::Malformed(_))));
        let mut doc = encode_element(&sample_element());
        doc.terms[0].exp = vec![];
        assert!(matches!(decode_element(&doc, &mut RingCache::default()), Err(Error::Malformed(_))));
    }

    #[test]
    fn matrix_parity_violation_is_a_domain_error() {
        let r = SuperRingSpec::grassmann(1).unwrap();
        let t = encode_element(&SuperElement::var(&r, "t1").unwrap());
        let one = encode_element(&SuperElement::one(&r));
        let doc = MatrixDoc {
            shape: ShapeDoc { rows: [1, 1], cols: [1, 1] },
            ring: None,
            entries: vec![vec![t.clone(), one.clone()], vec![one.clone(), one]],
        };
        assert_eq!(
            decode_matrix(&doc, &mut RingCache::default()),
            Err(Error::ParityPatternViolation { row: 0, col: 0 })
        );
    }

    #[test]
    fn empty_matrix_needs_ring() {
        let doc = MatrixDoc { shape: ShapeDoc { rows: [0, 0], cols: [1, 0] }, ring: None, entries: vec![] };
        assert!(matches!(decode_matrix(&doc, &mut RingCache::default()), Err(Error::Malformed(_))));
    }

    #[test]
    fn rational_point_values() {
        let doc: RationalPointDoc = from_str(r#"{"values": {"x": "1/2", "y": {"re": "0", "im": "1"}}}"#).unwrap();
        let p = decode_rational_point(&doc).unwrap();
        assert_eq!(p.values["x"], scalar::from_ratio(1, 2));
        assert_eq!(encode_rational_point(&p).values["x"], ValueDoc::Real("1/2".into()));
    }
}
