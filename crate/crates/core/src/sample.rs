//! Seeded random elements and matrices for self-tests.
//!
//! Every check draws from its own ChaCha8 stream, selected by a hash of the
//! check name, so adding or reordering checks never perturbs the inputs of
//! another one.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kubota::{p_part, Mat2};
use crate::local_field::{FieldElement, LocalField, SquareClass};
use crate::sign::Sign;

pub const DEFAULT_HEIGHT: u64 = 50;

/// FNV-1a, used only to name streams.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub struct Sampler {
    rng: ChaCha8Rng,
    field: LocalField,
    height: i64,
}

impl Sampler {
    pub fn new(field: LocalField, seed: u64, stream: &str, height: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(&format!("{field}/{stream}")));
        Sampler {
            rng,
            field,
            height: height.clamp(1, i64::MAX as u64) as i64,
        }
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `n / m` with `|n| <= H`, `1 <= m <= H`.
    pub fn rational(&mut self) -> BigRational {
        let n = self.rng.gen_range(-self.height..=self.height);
        let m = self.rng.gen_range(1..=self.height);
        BigRational::new(BigInt::from(n), BigInt::from(m))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if r != BigRational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn sign(&mut self) -> Sign {
        Sign::from_bool(self.rng.gen())
    }

    /// An element of the field; a quarter of extension samples lie in `F`.
    pub fn element(&mut self) -> FieldElement {
        let a = self.rational();
        let b = if self.field.is_base() || self.rng.gen_bool(0.25) {
            BigRational::from_integer(0.into())
        } else {
            self.rational()
        };
        FieldElement::new(self.field, a, b).expect("coordinates valid for the field")
    }

    pub fn nonzero_element(&mut self) -> FieldElement {
        loop {
            let x = self.element();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero element of `F`, embedded in the field.
    pub fn base_element(&mut self) -> FieldElement {
        FieldElement::from_rational(self.field, self.nonzero_rational())
    }

    /// Element of `F`, in `F` itself rather than embedded.
    pub fn f_element(&mut self) -> FieldElement {
        FieldElement::from_rational(self.field.base_field(), self.nonzero_rational())
    }

    pub fn square_class(&mut self) -> SquareClass {
        SquareClass::from_index(self.field, self.rng.gen_range(0..4))
    }

    /// An invertible matrix; one in five has `c = 0`.
    pub fn gl2(&mut self) -> Mat2 {
        let lower_zero = self.rng.gen_bool(0.2);
        loop {
            let c = if lower_zero {
                FieldElement::zero(self.field)
            } else {
                self.element()
            };
            if let Ok(g) = Mat2::new(self.element(), self.element(), c, self.element()) {
                return g;
            }
        }
    }

    pub fn sl2(&mut self) -> Mat2 {
        p_part(&self.gl2())
    }

    pub fn upper_triangular(&mut self) -> Mat2 {
        let z = FieldElement::zero(self.field);
        Mat2::new(
            self.nonzero_element(),
            self.element(),
            z,
            self.nonzero_element(),
        )
        .expect("nonzero diagonal")
    }

    pub fn unipotent(&mut self) -> Mat2 {
        Mat2::unipotent(self.element())
    }

    /// Invertible with all entries in `F`.
    pub fn gl2_base(&mut self) -> Mat2 {
        let lower_zero = self.rng.gen_bool(0.2);
        loop {
            let field = self.field;
            let mut e = || FieldElement::from_rational(field, self.rational());
            let c = if lower_zero {
                FieldElement::zero(field)
            } else {
                e()
            };
            if let Ok(g) = Mat2::new(e(), e(), c, e()) {
                return g;
            }
        }
    }
}
