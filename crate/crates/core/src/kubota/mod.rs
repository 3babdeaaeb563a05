//! The Kubota 2-cocycle on `GL2(E)` and arithmetic in the double cover it
//! defines.
//!
//! For `g = (a, b; c, d)` let `x(g) = c` if `c != 0` and `d` otherwise. On
//! `SL2(E)`
//!
//! ```text
//! β(g1, g2) = (x(g1), x(g2)) · (-x(g1)^{-1} x(g2), x(g1 g2))
//! ```
//!
//! and on `GL2(E)` it is extended through `g = diag(1, det g) p(g)`:
//!
//! ```text
//! β(g1, g2) = β(p(g1)^{det g2}, p(g2)) · v(det g2, p(g1))
//! ```
//!
//! where `g^y = diag(1, y^{-1}) g diag(1, y)` and `v(y, g)` is `1` when
//! `c != 0`, `(y, d)` when `c = 0`.

mod mat2;
mod meta;

pub use mat2::Mat2;
pub use meta::{commutator_pairing, meta_inv, meta_mul, MetaElement};

use crate::error::{Error, Result};
use crate::hilbert::hilbert;
use crate::local_field::FieldElement;
use crate::sign::Sign;

/// `c` if `c != 0`, else `d`.
pub fn x_of(g: &Mat2) -> &FieldElement {
    if g.c().is_zero() {
        g.d()
    } else {
        g.c()
    }
}

/// The `SL2` factor in `g = diag(1, det g) · p(g)`.
pub fn p_part(g: &Mat2) -> Mat2 {
    let one = FieldElement::one(g.field());
    let inv_det = g.det().inverse().expect("det is nonzero");
    g.scale_rows(&one, &inv_det)
}

/// `g^y = diag(1, y^{-1}) · g · diag(1, y)`.
pub fn conj_by_det(g: &Mat2, y: &FieldElement) -> Result<Mat2> {
    let y_inv = y.inverse()?;
    Mat2::new(g.a().clone(), g.b() * y, g.c() * &y_inv, g.d().clone())
}

/// `1` if `c != 0`, `(y, d)` if `c = 0`.
pub fn v_factor(y: &FieldElement, g: &Mat2) -> Result<Sign> {
    y.check_nonzero()?;
    if g.c().is_zero() {
        hilbert(y, g.d())
    } else {
        Ok(Sign::Plus)
    }
}

/// Kubota cocycle on `SL2(E) × SL2(E)`.
pub fn beta_sl2(g1: &Mat2, g2: &Mat2) -> Result<Sign> {
    g1.check_same_field(g2)?;
    if !g1.is_sl2() || !g2.is_sl2() {
        return Err(Error::NotSL2);
    }
    Ok(beta_sl2_unchecked(g1, g2, &g1.mul(g2)))
}

fn beta_sl2_unchecked(g1: &Mat2, g2: &Mat2, g12: &Mat2) -> Sign {
    let x1 = x_of(g1);
    let x2 = x_of(g2);
    let first = hilbert(x1, x2).expect("x(g) is nonzero");
    let ratio = -&(&x1.inverse().expect("x(g) is nonzero") * x2);
    first * hilbert(&ratio, x_of(g12)).expect("x(g) is nonzero")
}

/// Kubota cocycle on `GL2(E) × GL2(E)`.
pub fn beta(g1: &Mat2, g2: &Mat2) -> Result<Sign> {
    g1.check_same_field(g2)?;
    // only the lower row of g1 g2 enters through x(g1 g2)
    let c12 = &(g1.c() * g2.a()) + &(g1.d() * g2.c());
    let x12 = if c12.is_zero() {
        &(g1.c() * g2.b()) + &(g1.d() * g2.d())
    } else {
        c12
    };
    Ok(beta_given_product(g1, g2, &x12))
}

/// `β(g1, g2)` from square classes, given `x(g1 g2)`.
///
/// With `y = det g2`, the lower rows of `p(g1)^y`, `p(g2)` and their product
/// are `(c1 / (det1 y), d1 / det1)`, `(c2, d2) / y` and
/// `(c12, d12) / (det1 y)`, so every symbol argument is a known entry times
/// dets, and the symbol only sees square classes.
fn beta_given_product(g1: &Mat2, g2: &Mat2, x12: &FieldElement) -> Sign {
    let class = |x: &FieldElement| x.square_class().expect("nonzero");
    let cy = class(g2.det());
    let cdet1 = class(g1.det());
    let cx1 = if g1.c().is_zero() {
        class(g1.d()).mul(&cdet1)
    } else {
        class(g1.c()).mul(&cdet1).mul(&cy)
    };
    let cx2 = class(x_of(g2)).mul(&cy);
    let cx12 = class(x12).mul(&cdet1).mul(&cy);
    let minus_one = class(&FieldElement::from_int(g1.field(), -1));
    let mut s = cx1.pairing(&cx2) * minus_one.mul(&cx1).mul(&cx2).pairing(&cx12);
    if g1.c().is_zero() {
        s *= cy.pairing(&cx1);
    }
    s
}

/// `β(g1, g2)` evaluated literally: form `p(g1)^{det g2}`, `p(g2)` and their
/// product and apply the `SL2` formula with Hilbert symbols of elements.
/// Slower than [`beta`]; kept as a cross-check.
pub fn beta_by_definition(g1: &Mat2, g2: &Mat2) -> Result<Sign> {
    g1.check_same_field(g2)?;
    let y = g2.det();
    let p1 = p_part(g1);
    let p2 = p_part(g2);
    let p1y = conj_by_det(&p1, y)?;
    let prod = p1y.mul(&p2);
    Ok(beta_sl2_unchecked(&p1y, &p2, &prod) * v_factor(y, &p1)?)
}

/// Whether `β(g1, g2) β(g1 g2, g3) = β(g1, g2 g3) β(g2, g3)`.
pub fn check_cocycle(g1: &Mat2, g2: &Mat2, g3: &Mat2) -> Result<bool> {
    g1.check_same_field(g2)?;
    g1.check_same_field(g3)?;
    let g12 = g1.mul(g2);
    let g23 = g2.mul(g3);
    let g123 = g12.mul(g3);
    let lhs = beta_given_product(g1, g2, x_of(&g12)) * beta_given_product(&g12, g3, x_of(&g123));
    let rhs = beta_given_product(g1, &g23, x_of(&g123)) * beta(g2, g3)?;
    Ok(lhs == rhs)
}

/// For `g1, g2` with entries in `F`, whether `β(g1, g2) = +1`, so that
/// `g ↦ (g, 1)` is multiplicative on the pair.
pub fn is_split_on_gl2f(g1: &Mat2, g2: &Mat2) -> Result<bool> {
    if !g1.is_base_rational() || !g2.is_base_rational() {
        return Err(Error::NotFRational);
    }
    Ok(beta(g1, g2)?.is_plus())
}
