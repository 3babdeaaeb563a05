use std::fmt;

use super::{FieldElement, LocalField};
use crate::sign::Sign;

/// A coset of `E^×2` in `E^×`. At odd `p` the group is Klein four; a class is
/// stored as exponent bits over the representatives `{1, u, π, uπ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    field: LocalField,
    // bit 0: unit non-square u, bit 1: uniformizer π
    bits: u8,
}

impl SquareClass {
    pub(crate) fn from_parts(field: LocalField, has_u: bool, has_pi: bool) -> Self {
        SquareClass {
            field,
            bits: has_u as u8 | (has_pi as u8) << 1,
        }
    }

    pub fn identity(field: LocalField) -> Self {
        SquareClass { field, bits: 0 }
    }

    /// Class with index `0..4` in the order `1, u, π, uπ`.
    pub fn from_index(field: LocalField, index: usize) -> Self {
        assert!(index < 4, "square class index out of range");
        SquareClass {
            field,
            bits: index as u8,
        }
    }

    pub fn all(field: LocalField) -> [SquareClass; 4] {
        [0, 1, 2, 3].map(|i| SquareClass::from_index(field, i))
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    /// Odd valuation: `χ` of this class cuts out a ramified extension.
    pub fn is_ramified(&self) -> bool {
        self.bits & 2 != 0
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        assert_eq!(
            self.field, other.field,
            "square classes of different fields"
        );
        SquareClass {
            field: self.field,
            bits: self.bits ^ other.bits,
        }
    }

    /// Canonical representative in `{1, u, π, uπ}`.
    pub fn rep(&self) -> FieldElement {
        let mut x = FieldElement::one(self.field);
        if self.bits & 1 != 0 {
            x = &x * &self.field.nonsquare_unit();
        }
        if self.bits & 2 != 0 {
            x = &x * &self.field.uniformizer();
        }
        x
    }

    /// Hilbert symbol of the two classes, evaluated on the canonical
    /// representatives.
    pub fn pairing(&self, other: &SquareClass) -> Sign {
        crate::hilbert::hilbert(&self.rep(), &other.rep()).expect("representatives are nonzero")
    }

    pub fn name(&self) -> &'static str {
        ["1", "u", "pi", "u*pi"][self.index()]
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four canonical classes `1, u, π, uπ` of a field.
pub fn square_class_reps(field: LocalField) -> [SquareClass; 4] {
    SquareClass::all(field)
}
