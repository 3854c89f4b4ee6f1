//! Presentations `R[x₁..x_p, ξ₁..ξ_q] / (f₁..f_r′, φ₁..φ_s′)` over a base
//! ring `R`, their super-Jacobian, and the rank test for smoothness and
//! étaleness at a rational point.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::superalgebra::{same_ring, Parity, Ring, SuperElement, SuperHom, SuperRingSpec, Variable};
use crate::supermatrix::{even_det, SuperMatrix, SuperShape};

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    base: Ring,
    fiber: Ring,
    ring: Ring,
    even_relations: Vec<SuperElement>,
    odd_relations: Vec<SuperElement>,
}

/// The ring `base ⊗ fiber`: base generators first within each parity.
pub fn total_ring(base: &Ring, fiber: &Ring) -> Result<Ring> {
    SuperRingSpec::new(
        base.even_vars().iter().chain(fiber.even_vars()).cloned(),
        base.odd_vars().iter().chain(fiber.odd_vars()).cloned(),
    )
}

impl Presentation {
    /// Relations must live in [`total_ring`]`(base, fiber)` and be homogeneous
    /// of the stated parity.
    pub fn new(
        base: &Ring,
        fiber: &Ring,
        even_relations: Vec<SuperElement>,
        odd_relations: Vec<SuperElement>,
    ) -> Result<Self> {
        let ring = total_ring(base, fiber)?;
        for (rels, parity) in [(&even_relations, Parity::Even), (&odd_relations, Parity::Odd)] {
            for rel in rels {
                if !same_ring(rel.ring(), &ring) {
                    return Err(Error::RingMismatch);
                }
                if rel.is_zero() || !rel.has_parity(parity) {
                    return Err(Error::ParityViolation(format!(
                        "relation `{rel}` is not a nonzero {} element",
                        if parity.is_odd() { "odd" } else { "even" }
                    )));
                }
            }
        }
        Ok(Presentation { base: base.clone(), fiber: fiber.clone(), ring, even_relations, odd_relations })
    }

    /// A presentation over the ground field.
    pub fn absolute(fiber: &Ring, even_relations: Vec<SuperElement>, odd_relations: Vec<SuperElement>) -> Result<Self> {
        let base = SuperRingSpec::new(Vec::<String>::new(), Vec::<String>::new())?;
        Self::new(&base, fiber, even_relations, odd_relations)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn fiber(&self) -> &Ring {
        &self.fiber
    }

    /// The ring the relations live in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn even_relations(&self) -> &[SuperElement] {
        &self.even_relations
    }

    pub fn odd_relations(&self) -> &[SuperElement] {
        &self.odd_relations
    }

    /// Fiber generators in Jacobian column order: even first.
    pub fn fiber_variables(&self) -> Vec<Variable> {
        let (be, bo) = (self.base.num_even(), self.base.num_odd());
        (0..self.fiber.num_even())
            .map(|k| Variable::Even(be + k))
            .chain((0..self.fiber.num_odd()).map(|l| Variable::Odd(bo + l)))
            .collect()
    }

    /// Adjoins free fiber generators. New names must not clash.
    pub fn free_extension(&self, even: &[&str], odd: &[&str]) -> Result<Self> {
        let fiber = SuperRingSpec::new(
            self.fiber.even_vars().iter().cloned().chain(even.iter().map(|s| s.to_string())),
            self.fiber.odd_vars().iter().cloned().chain(odd.iter().map(|s| s.to_string())),
        )?;
        let ring = total_ring(&self.base, &fiber)?;
        let embed = SuperHom::from_named(&self.ring, &ring, &[])?;
        let lift = |rels: &[SuperElement]| rels.iter().map(|r| embed.apply(r)).collect::<Result<Vec<_>>>();
        Self::new(&self.base, &fiber, lift(&self.even_relations)?, lift(&self.odd_relations)?)
    }
}

/// Values of even generators at a closed point; odd generators are zero there.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RationalPoint {
    pub values: BTreeMap<String, Scalar>,
}

impl RationalPoint {
    pub fn new<I, S>(values: I) -> Self
    where
        I: IntoIterator<Item = (S, Scalar)>,
        S: Into<String>,
    {
        RationalPoint { values: values.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }

    /// Evaluation morphism on `ring`: assigned even generators become
    /// constants, odd generators vanish, other even generators stay.
    pub fn evaluation(&self, ring: &Ring) -> Result<SuperHom> {
        for name in self.values.keys() {
            match ring.lookup(name) {
                None => return Err(Error::UnknownVariable(name.clone())),
                Some(Variable::Odd(_)) => {
                    return Err(Error::ParityViolation(format!("odd generator `{name}` cannot take a value")))
                }
                Some(Variable::Even(_)) => {}
            }
        }
        let even = ring
            .even_vars()
            .iter()
            .map(|name| match self.values.get(name) {
                Some(v) => SuperElement::constant(ring, v.clone()),
                None => SuperElement::var(ring, name).expect("own generator"),
            })
            .collect();
        let odd = vec![SuperElement::zero(ring); ring.num_odd()];
        SuperHom::new(ring, ring, even, odd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub even_rank: usize,
    pub odd_rank: usize,
    /// `(p − r′ | q − s′)` when smooth.
    pub relative_dimension: Option<(usize, usize)>,
}

impl SmoothnessVerdict {
    pub fn is_etale(&self) -> bool {
        self.relative_dimension == Some((0, 0))
    }
}

/// `∂(f_i, φ_j)/∂(x_k, ξ_l)` with left derivatives, graded `(r′|s′) × (p|q)`.
pub fn jacobian(pres: &Presentation) -> SuperMatrix {
    let vars = pres.fiber_variables();
    let shape = SuperShape::new(
        (pres.even_relations.len(), pres.odd_relations.len()),
        (pres.fiber.num_even(), pres.fiber.num_odd()),
    );
    let rels: Vec<&SuperElement> = pres.even_relations.iter().chain(&pres.odd_relations).collect();
    SuperMatrix::from_fn(shape, &pres.ring, |i, j| rels[i].derivative(vars[j]))
        .expect("left derivatives respect the parity pattern")
}

/// Jacobian entries evaluated at the point.
pub fn jacobian_at(pres: &Presentation, pt: &RationalPoint) -> Result<SuperMatrix> {
    let eval = check_point(pres, pt)?;
    let jac = jacobian(pres);
    let rows: Vec<Vec<SuperElement>> = jac
        .rows()
        .map(|row| row.iter().map(|e| eval.apply(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    SuperMatrix::validate(jac.shape(), &pres.ring, rows)
}

fn check_point(pres: &Presentation, pt: &RationalPoint) -> Result<SuperHom> {
    let eval = pt.evaluation(&pres.ring)?;
    for rel in pres.even_relations.iter().chain(&pres.odd_relations) {
        if !eval.apply(rel)?.is_zero() {
            return Err(Error::NotAPoint(rel.to_string()));
        }
    }
    Ok(eval)
}

/// Ranks of `∂f/∂x` and `∂φ/∂ξ` at the point. Odd-parity entries vanish
/// there, so the evaluated Jacobian is block diagonal.
pub fn rank_at_point(pres: &Presentation, pt: &RationalPoint) -> Result<(usize, usize)> {
    let jac = jacobian_at(pres, pt)?;
    let [even_block, _, _, odd_block] = jac.blocks();
    Ok((rank(&even_block), rank(&odd_block)))
}

pub fn is_smooth_at(pres: &Presentation, pt: &RationalPoint) -> Result<SmoothnessVerdict> {
    let (even_rank, odd_rank) = rank_at_point(pres, pt)?;
    let (r, s) = (pres.even_relations.len(), pres.odd_relations.len());
    let smooth = even_rank == r && odd_rank == s;
    let relative_dimension = smooth.then(|| (pres.fiber.num_even() - r, pres.fiber.num_odd() - s));
    Ok(SmoothnessVerdict { smooth, even_rank, odd_rank, relative_dimension })
}

pub fn is_etale_at(pres: &Presentation, pt: &RationalPoint) -> Result<bool> {
    Ok(is_smooth_at(pres, pt)?.is_etale())
}

/// Rank over the fraction field of the entries' (commutative, integral)
/// polynomial ring, by division-free elimination.
fn rank(m: &SuperMatrix) -> usize {
    let cols = m.num_cols();
    let mut rows: Vec<Vec<SuperElement>> = m.rows().map(<[_]>::to_vec).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            let factor = rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = &(&pivot * &rows[i][j]) - &(&factor * &rows[rank][j]);
                rows[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// The coordinate ring of `GL(m|n)`: free even entries `a_i_j` (even-even),
/// `d_i_j` (odd-odd), odd entries `b_i_j`, `c_i_j`, and `t` with
/// `t · det(A) · det(D) = 1`. Returns it with its identity point.
pub fn gl_presentation(m: usize, n: usize) -> Result<(Presentation, RationalPoint)> {
    let sq = |p: &str, k: usize| -> Vec<String> {
        (0..k).flat_map(|i| (0..k).map(move |j| format!("{p}_{i}_{j}"))).collect()
    };
    let rect = |p: &str, r: usize, c: usize| -> Vec<String> {
        (0..r).flat_map(|i| (0..c).map(move |j| format!("{p}_{i}_{j}"))).collect()
    };
    let mut even = sq("a", m);
    even.extend(sq("d", n));
    even.push("t".to_string());
    let mut odd = rect("b", m, n);
    odd.extend(rect("c", n, m));
    let fiber = SuperRingSpec::new(even, odd)?;
    let base = SuperRingSpec::new(Vec::<String>::new(), Vec::<String>::new())?;
    let ring = total_ring(&base, &fiber)?;
    let var = |name: String| SuperElement::var(&ring, &name);
    let block = |p: &str, k: usize| -> Result<SuperMatrix> {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| var(format!("{p}_{i}_{j}"))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SuperMatrix::validate(SuperShape::new((k, 0), (k, 0)), &ring, rows)
    };
    let det_a = even_det(&block("a", m)?)?;
    let det_d = even_det(&block("d", n)?)?;
    let rel = &(&(&var("t".into())? * &det_a) * &det_d) - &SuperElement::one(&ring);
    let pres = Presentation::new(&base, &fiber, vec![rel], vec![])?;

    let mut values: Vec<(String, Scalar)> = fiber.even_vars().iter().map(|v| (v.clone(), scalar::zero())).collect();
    for (name, value) in values.iter_mut() {
        let parts: Vec<&str> = name.split('_').collect();
        if name == "t" || (parts.len() == 3 && parts[1] == parts[2]) {
            *value = scalar::one();
        }
    }
    Ok((pres, RationalPoint::new(values)))
}
