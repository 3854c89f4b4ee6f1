use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of odd generators a ring may carry; odd monomials are bitmasks.
pub const MAX_ODD_VARS: usize = 64;

/// Grading degree of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_degree(degree: usize) -> Self {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Parity of a product.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Generators of a free supercommutative ring `ℚ(i)[x₁..x_p] ⊗ Λ[θ₁..θ_q]`.
///
/// The order of both name lists is fixed at construction and defines the
/// monomial normal form of every element over this ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperRingSpec {
    even: Vec<String>,
    odd: Vec<String>,
}

/// Shared handle to a ring; elements and matrices hold one of these.
pub type Ring = Arc<SuperRingSpec>;

impl SuperRingSpec {
    pub fn new<E, O>(even: E, odd: O) -> Result<Ring>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        O: IntoIterator,
        O::Item: Into<String>,
    {
        let even: Vec<String> = even.into_iter().map(Into::into).collect();
        let odd: Vec<String> = odd.into_iter().map(Into::into).collect();
        if odd.len() > MAX_ODD_VARS {
            return Err(Error::InvalidRing(format!(
                "{} odd generators exceed the limit of {MAX_ODD_VARS}",
                odd.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in even.iter().chain(odd.iter()) {
            if name.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(SuperRingSpec { even, odd }))
    }

    /// The exterior algebra `Λ[θ₁..θ_q]` with generators named `t1..tq`.
    pub fn grassmann(q: usize) -> Result<Ring> {
        Self::new(Vec::<String>::new(), (1..=q).map(|i| format!("t{i}")))
    }

    pub fn even_vars(&self) -> &[String] {
        &self.even
    }

    pub fn odd_vars(&self) -> &[String] {
        &self.odd
    }

    pub fn num_even(&self) -> usize {
        self.even.len()
    }

    pub fn num_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Variable> {
        if let Some(i) = self.even.iter().position(|v| v == name) {
            return Some(Variable::Even(i));
        }
        self.odd.iter().position(|v| v == name).map(Variable::Odd)
    }

    pub fn name(&self, var: Variable) -> &str {
        match var {
            Variable::Even(i) => &self.even[i],
            Variable::Odd(i) => &self.odd[i],
        }
    }

    /// All generators, even ones first.
    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        (0..self.even.len())
            .map(Variable::Even)
            .chain((0..self.odd.len()).map(Variable::Odd))
    }
}

impl fmt::Display for SuperRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i)[{}] ⊗ Λ[{}]", self.even.join(", "), self.odd.join(", "))
    }
}

/// Index of a generator within its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Even(usize),
    Odd(usize),
}

impl Variable {
    pub fn parity(self) -> Parity {
        match self {
            Variable::Even(_) => Parity::Even,
            Variable::Odd(_) => Parity::Odd,
        }
    }
}

/// Same ring, either by identity or by value.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
