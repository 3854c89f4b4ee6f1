use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::ring::{same_ring, Parity, Ring, Variable};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A monomial `x^exps · θ_{i₁}⋯θ_{i_k}` with `i₁ < … < i_k`.
///
/// The odd part is a bitmask; bit `i` stands for the `i`-th odd generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub odd: u64,
}

impl Monomial {
    pub fn unit(num_even: usize) -> Self {
        Monomial { exps: vec![0; num_even], odd: 0 }
    }

    pub fn odd_degree(&self) -> usize {
        self.odd.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        Parity::from_degree(self.odd_degree())
    }

    pub fn is_unit(&self) -> bool {
        self.odd == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the odd generators, increasing.
    pub fn odd_indices(&self) -> impl Iterator<Item = usize> {
        let mask = self.odd;
        (0..64).filter(move |i| mask >> i & 1 == 1)
    }

    /// Product in normal order, with `true` meaning a sign flip; `None` if an
    /// odd generator repeats.
    fn product(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let negative = reorder_sign(self.odd, other.odd);
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((Monomial { exps, odd: self.odd | other.odd }, negative))
    }
}

/// Sign of sorting the concatenation `left ++ right` of two disjoint odd words:
/// the parity of the number of pairs `(i ∈ left, j ∈ right)` with `i > j`.
fn reorder_sign(left: u64, right: u64) -> bool {
    let mut swaps = 0u32;
    let mut rest = right;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 63 { 0 } else { left >> (j + 1) };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}

/// An element of a free supercommutative ring, stored as a sparse map from
/// normal-ordered monomials to nonzero Gaussian-rational coefficients.
#[derive(Debug, Clone)]
pub struct SuperElement {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for SuperElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for SuperElement {}

impl SuperElement {
    pub fn zero(ring: &Ring) -> Self {
        SuperElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, scalar::one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::unit(ring.num_even()), c)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, scalar::from_int(n))
    }

    /// Single term; `monomial.exps` must have the ring's even arity.
    pub fn monomial(ring: &Ring, monomial: Monomial, c: Scalar) -> Self {
        assert_eq!(monomial.exps.len(), ring.num_even(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        SuperElement { ring: ring.clone(), terms }
    }

    pub fn variable(ring: &Ring, var: Variable) -> Self {
        let mut m = Monomial::unit(ring.num_even());
        match var {
            Variable::Even(i) => m.exps[i] = 1,
            Variable::Odd(i) => m.odd = 1 << i,
        }
        Self::monomial(ring, m, scalar::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let v = ring.lookup(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::variable(ring, v))
    }

    /// Builds an element from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut out = SuperElement::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), ring.num_even(), "monomial arity");
            out.add_term(m, c);
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_unit() && *c == scalar::one())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::unit(self.ring.num_even()))
            .cloned()
            .unwrap_or_else(scalar::zero)
    }

    /// `Some(c)` when the element is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(scalar::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_unit()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Parity if the element is homogeneous. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Homogeneous of parity `p`; zero has every parity.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// Reduction modulo the ideal generated by the odd generators.
    pub fn body(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.odd == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SuperElement { ring: self.ring.clone(), terms }
    }

    /// The nilpotent remainder `self − body(self)` when the ring has no even generators.
    pub fn soul(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.odd != 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SuperElement { ring: self.ring.clone(), terms }
    }

    /// Highest total odd degree among the terms.
    pub fn max_odd_degree(&self) -> usize {
        self.terms.keys().map(Monomial::odd_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return SuperElement::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        SuperElement { ring: self.ring.clone(), terms }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Supercommutative product with the Koszul sign absorbed into coefficients.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = SuperElement::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.product(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = SuperElement::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Whether the element is a unit: its body is a nonzero constant.
    pub fn is_invertible(&self) -> bool {
        matches!(self.body().as_constant(), Some(c) if !c.is_zero())
    }

    /// Inverse via the terminating Neumann series `b⁻¹ Σ_k (−s·b⁻¹)^k`, where
    /// `b` is the (constant) body and `s` the nilpotent remainder.
    pub fn inverse(&self) -> Result<Self> {
        let body = self.body();
        let b = match body.as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => {
                return Err(Error::NotInvertible(format!(
                    "element with body {body} is not a unit"
                )))
            }
        };
        let b_inv = scalar::inverse(&b).expect("nonzero body");
        let soul = self.soul();
        let step = soul.scale(&-b_inv.clone());
        let mut acc = SuperElement::one(&self.ring);
        let mut power = SuperElement::one(&self.ring);
        for _ in 0..self.ring.num_odd() {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&b_inv))
    }

    /// Left partial derivative. For an odd generator the factor is first moved
    /// to the front of each monomial, collecting the Koszul sign, then removed.
    pub fn derivative(&self, var: Variable) -> Self {
        let mut out = SuperElement::zero(&self.ring);
        for (m, c) in &self.terms {
            match var {
                Variable::Even(k) => {
                    let e = m.exps[k];
                    if e == 0 {
                        continue;
                    }
                    let mut dm = m.clone();
                    dm.exps[k] -= 1;
                    out.add_term(dm, c * scalar::from_int(e as i64));
                }
                Variable::Odd(l) => {
                    if m.odd >> l & 1 == 0 {
                        continue;
                    }
                    let below = (m.odd & ((1u64 << l) - 1)).count_ones();
                    let mut dm = m.clone();
                    dm.odd &= !(1u64 << l);
                    out.add_term(dm, if below % 2 == 1 { -c.clone() } else { c.clone() });
                }
            }
        }
        out
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Self> {
        let v = self
            .ring
            .lookup(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(v))
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.even_vars()[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.ring.even_vars()[i])),
                }
            }
            for i in m.odd_indices() {
                factors.push(self.ring.odd_vars()[i].clone());
            }
            if factors.is_empty() {
                write!(f, "{}", scalar::display(c))?;
            } else if *c == scalar::one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", scalar::display(c), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched rings; use the `checked_*` methods when
// the operands are not already known to share a ring.

impl Add for &SuperElement {
    type Output = SuperElement;
    fn add(self, rhs: &SuperElement) -> SuperElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &SuperElement {
    type Output = SuperElement;
    fn sub(self, rhs: &SuperElement) -> SuperElement {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &SuperElement {
    type Output = SuperElement;
    fn mul(self, rhs: &SuperElement) -> SuperElement {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        SuperElement { ring: self.ring.clone(), terms }
    }
}

impl Neg for SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        -&self
    }
}
