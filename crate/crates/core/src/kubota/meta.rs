use std::fmt;

use super::{beta, Mat2};
use crate::error::Result;
use crate::local_field::FieldElement;
use crate::sign::Sign;

/// An element `(g, ε)` of the double cover of `GL2(E)` built from `β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetaElement {
    pub g: Mat2,
    pub eps: Sign,
}

impl MetaElement {
    pub fn new(g: Mat2, eps: Sign) -> Self {
        MetaElement { g, eps }
    }

    /// The section `g ↦ (g, 1)`.
    pub fn lift(g: Mat2) -> Self {
        MetaElement { g, eps: Sign::Plus }
    }

    pub fn identity(field: crate::LocalField) -> Self {
        MetaElement::lift(Mat2::identity(field))
    }

    pub fn mul(&self, rhs: &MetaElement) -> Result<MetaElement> {
        meta_mul(self, rhs)
    }

    pub fn inv(&self) -> Result<MetaElement> {
        meta_inv(self)
    }
}

impl fmt::Display for MetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.eps)
    }
}

/// `(g1, ε1)(g2, ε2) = (g1 g2, ε1 ε2 β(g1, g2))`.
pub fn meta_mul(x: &MetaElement, y: &MetaElement) -> Result<MetaElement> {
    let b = beta(&x.g, &y.g)?;
    Ok(MetaElement::new(x.g.mul(&y.g), x.eps * y.eps * b))
}

/// `(g, ε)^{-1} = (g^{-1}, ε β(g, g^{-1}))`, using `β(1, 1) = 1`.
pub fn meta_inv(x: &MetaElement) -> Result<MetaElement> {
    let gi = x.g.inverse();
    let b = beta(&x.g, &gi)?;
    Ok(MetaElement::new(gi, x.eps * b))
}

/// The sign of the commutator of `(z·1, 1)` and `(g, 1)` in the cover.
/// The underlying matrix commutator is trivial since `z·1` is central.
pub fn commutator_pairing(z: &FieldElement, g: &Mat2) -> Result<Sign> {
    let zz = MetaElement::lift(Mat2::scalar(z.clone())?);
    let gg = MetaElement::lift(g.clone());
    let c = zz.mul(&gg)?.mul(&zz.inv()?)?.mul(&gg.inv()?)?;
    debug_assert_eq!(c.g, Mat2::identity(g.field()));
    Ok(c.eps)
}
