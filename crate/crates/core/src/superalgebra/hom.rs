use super::element::SuperElement;
use super::ring::{same_ring, Parity, Ring, Variable};
use crate::error::{Error, Result};

/// A parity-preserving superalgebra morphism given by the images of the
/// generators of `source`. Evaluating coordinates of a point on a test
/// algebra is exactly applying such a morphism.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperHom {
    source: Ring,
    target: Ring,
    even_images: Vec<SuperElement>,
    odd_images: Vec<SuperElement>,
}

impl SuperHom {
    pub fn new(
        source: &Ring,
        target: &Ring,
        even_images: Vec<SuperElement>,
        odd_images: Vec<SuperElement>,
    ) -> Result<Self> {
        if even_images.len() != source.num_even() || odd_images.len() != source.num_odd() {
            return Err(Error::ShapeMismatch(format!(
                "morphism needs {}|{} images, got {}|{}",
                source.num_even(),
                source.num_odd(),
                even_images.len(),
                odd_images.len()
            )));
        }
        let checks = even_images
            .iter()
            .zip(source.even_vars())
            .map(|(img, name)| (img, name, Parity::Even))
            .chain(odd_images.iter().zip(source.odd_vars()).map(|(img, name)| (img, name, Parity::Odd)));
        for (img, name, parity) in checks {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
            if !img.has_parity(parity) {
                return Err(Error::ParityViolation(format!(
                    "{} generator `{name}` mapped to `{img}`",
                    if parity.is_odd() { "odd" } else { "even" }
                )));
            }
        }
        Ok(SuperHom {
            source: source.clone(),
            target: target.clone(),
            even_images,
            odd_images,
        })
    }

    /// Morphism from named images; generators not mentioned map to the
    /// same-named generator of `target` (which must then exist).
    pub fn from_named(source: &Ring, target: &Ring, images: &[(&str, SuperElement)]) -> Result<Self> {
        for (name, _) in images {
            if source.lookup(name).is_none() {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        let pick = |name: &String| -> Result<SuperElement> {
            match images.iter().find(|(n, _)| n == name) {
                Some((_, img)) => Ok(img.clone()),
                None => SuperElement::var(target, name),
            }
        };
        let even = source.even_vars().iter().map(pick).collect::<Result<Vec<_>>>()?;
        let odd = source.odd_vars().iter().map(pick).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, even, odd)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn image(&self, var: Variable) -> &SuperElement {
        match var {
            Variable::Even(i) => &self.even_images[i],
            Variable::Odd(i) => &self.odd_images[i],
        }
    }

    /// The unique morphism extension applied to `a`.
    pub fn apply(&self, a: &SuperElement) -> Result<SuperElement> {
        if !same_ring(a.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        let mut out = SuperElement::zero(&self.target);
        for (m, c) in a.terms() {
            let mut term = SuperElement::constant(&self.target, c.clone());
            for (img, &e) in self.even_images.iter().zip(&m.exps) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            for i in m.odd_indices() {
                term = &term * &self.odd_images[i];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `other ∘ self`, i.e. first `self`, then `other`.
    pub fn then(&self, other: &SuperHom) -> Result<SuperHom> {
        if !same_ring(&self.target, &other.source) {
            return Err(Error::RingMismatch);
        }
        let even = self.even_images.iter().map(|e| other.apply(e)).collect::<Result<Vec<_>>>()?;
        let odd = self.odd_images.iter().map(|e| other.apply(e)).collect::<Result<Vec<_>>>()?;
        SuperHom::new(&self.source, &other.target, even, odd)
    }
}
