//! Free supercommutative rings `ℚ(i)[x₁..x_p] ⊗ Λ[θ₁..θ_q]`: elements,
//! parity, body and soul, inversion, substitution morphisms and left
//! partial derivatives.

mod element;
mod hom;
mod ring;

pub use element::{Monomial, SuperElement};
pub use hom::SuperHom;
pub use ring::{same_ring, Parity, Ring, SuperRingSpec, Variable, MAX_ODD_VARS};
