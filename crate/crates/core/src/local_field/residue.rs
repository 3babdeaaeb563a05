use std::fmt;

use crate::local_field::{Extension, LocalField};
use crate::sign::Sign;

/// An element of the residue field of a [`LocalField`]: `F_p`, or
/// `F_p(s)` with `s^2 = d mod p` for unramified extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    field: LocalField,
    r0: u64,
    r1: u64,
}

impl ResidueElement {
    pub fn new(field: LocalField, r0: u64, r1: u64) -> Self {
        let p = field.p();
        let r1 = if field.residue_degree() == 2 {
            r1 % p
        } else {
            0
        };
        ResidueElement {
            field,
            r0: r0 % p,
            r1,
        }
    }

    pub fn from_int(field: LocalField, n: i64) -> Self {
        let p = field.p() as i64;
        Self::new(field, n.rem_euclid(p) as u64, 0)
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    /// Coordinates `(r0, r1)` of `r0 + r1 s`.
    pub fn coords(&self) -> (u64, u64) {
        (self.r0, self.r1)
    }

    pub fn is_zero(&self) -> bool {
        self.r0 == 0 && self.r1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.r0 == 1 && self.r1 == 0
    }

    fn d_bar(&self) -> u128 {
        match self.field.extension() {
            Extension::Unramified(d) => d.rem_euclid(self.field.p() as i64) as u128,
            _ => 0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let p = self.field.p() as u128;
        let (a0, a1) = (self.r0 as u128, self.r1 as u128);
        let (b0, b1) = (other.r0 as u128, other.r1 as u128);
        let c0 = (a0 * b0 + (a1 * b1 % p) * self.d_bar()) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        ResidueElement {
            field: self.field,
            r0: c0 as u64,
            r1: c1 as u64,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p();
        Self::new(self.field, p - self.r0, p - self.r1)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::new(self.field, 1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Signed power; negative exponents invert first (element must be nonzero).
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inverse().pow(e.unsigned_abs())
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero residue");
        self.pow(self.field.residue_order() - 2)
    }

    /// Quadratic character via Euler's criterion `x^((q-1)/2)`.
    pub fn quadratic_character(&self) -> Sign {
        assert!(!self.is_zero(), "quadratic character of zero");
        let e = self.pow((self.field.residue_order() - 1) / 2);
        if e.is_one() {
            Sign::Plus
        } else {
            debug_assert_eq!(e, Self::from_int(self.field, -1));
            Sign::Minus
        }
    }

    pub fn is_square(&self) -> bool {
        self.quadratic_character().is_plus()
    }

    /// Every element of the residue field.
    pub fn all(field: LocalField) -> impl Iterator<Item = ResidueElement> {
        let p = field.p();
        let top = if field.residue_degree() == 2 { p } else { 1 };
        (0..top).flat_map(move |r1| (0..p).map(move |r0| ResidueElement::new(field, r0, r1)))
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r1 == 0 {
            write!(f, "{}", self.r0)
        } else {
            write!(f, "{}+{}s", self.r0, self.r1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Euler's criterion agrees with the set of squares found by enumeration.
    fn check_against_enumeration(field: LocalField) {
        let squares: HashSet<_> = ResidueElement::all(field)
            .filter(|x| !x.is_zero())
            .map(|x| x.mul(&x))
            .collect();
        let q = field.residue_order();
        assert_eq!(squares.len() as u64, (q - 1) / 2);
        for x in ResidueElement::all(field).filter(|x| !x.is_zero()) {
            assert_eq!(x.is_square(), squares.contains(&x), "{x} in {field}");
        }
    }

    #[test]
    fn euler_matches_enumeration() {
        for field in [
            LocalField::base(5).unwrap(),
            LocalField::base(7).unwrap(),
            LocalField::unramified(5, 2).unwrap(),
            LocalField::unramified(3, 2).unwrap(),
            LocalField::unramified(7, 3).unwrap(),
            LocalField::ramified(5, 5).unwrap(),
        ] {
            check_against_enumeration(field);
        }
    }

    #[test]
    fn sqrt_two_residue_in_f25() {
        let e = LocalField::unramified(5, 2).unwrap();
        let s = ResidueElement::new(e, 0, 1);
        // s^12 = 2^6 = 64 = 4 mod 5
        assert_eq!(s.pow(12), ResidueElement::from_int(e, 4));
        assert!(!s.is_square());
    }

    #[test]
    fn inverse_roundtrip() {
        let e = LocalField::unramified(7, 3).unwrap();
        for x in ResidueElement::all(e).filter(|x| !x.is_zero()) {
            assert!(x.mul(&x.inverse()).is_one());
        }
    }
}
