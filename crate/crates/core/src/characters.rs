//! The square-class group `E^×/E^×2`, quadratic characters `χ_a = (a, ·)`,
//! and the torsor of genuine characters of the cover of the center that
//! restrict to a fixed character on its squares.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::hilbert;
use crate::local_field::{FieldElement, LocalField, SquareClass};
use crate::sign::Sign;

/// `E^×/E^×2` as a Klein four-group on the canonical classes `1, u, π, uπ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareClassGroup {
    field: LocalField,
}

impl SquareClassGroup {
    pub fn new(field: LocalField) -> Self {
        SquareClassGroup { field }
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn order(&self) -> usize {
        4
    }

    pub fn identity(&self) -> SquareClass {
        SquareClass::identity(self.field)
    }

    pub fn elements(&self) -> [SquareClass; 4] {
        SquareClass::all(self.field)
    }

    /// `table[i][j]` is the index of `class_i · class_j`.
    pub fn table(&self) -> [[usize; 4]; 4] {
        let els = self.elements();
        els.map(|x| els.map(|y| x.mul(&y).index()))
    }

    /// The five subgroups: trivial, three of order 2, the whole group.
    pub fn subgroups(&self) -> Vec<ClassSubgroup> {
        (0u8..16)
            .filter_map(|mask| ClassSubgroup::from_mask(self.field, mask))
            .collect()
    }
}

/// A subgroup of `E^×/E^×2`, stored as a membership bitmask over class indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassSubgroup {
    field: LocalField,
    mask: u8,
}

impl ClassSubgroup {
    fn from_mask(field: LocalField, mask: u8) -> Option<Self> {
        if mask & 1 == 0 || mask > 15 {
            return None;
        }
        let closed = (0..4).all(|i| {
            (0..4)
                .all(|j| mask & (1 << i) == 0 || mask & (1 << j) == 0 || mask & (1 << (i ^ j)) != 0)
        });
        closed.then_some(ClassSubgroup { field, mask })
    }

    pub fn trivial(field: LocalField) -> Self {
        ClassSubgroup { field, mask: 1 }
    }

    pub fn full(field: LocalField) -> Self {
        ClassSubgroup { field, mask: 15 }
    }

    /// The subgroup generated by the given classes.
    pub fn generated_by(field: LocalField, gens: &[SquareClass]) -> Self {
        let mut mask = 1u8;
        for g in gens {
            assert_eq!(g.field(), field, "generator from a different field");
            for i in 0..4 {
                if mask & (1 << i) != 0 {
                    mask |= 1 << (i ^ g.index());
                }
            }
        }
        ClassSubgroup { field, mask }
    }

    /// `None` unless the classes form a subgroup.
    pub fn from_classes(field: LocalField, classes: &[SquareClass]) -> Option<Self> {
        let mask = classes.iter().fold(0u8, |m, c| m | 1 << c.index());
        ClassSubgroup::from_mask(field, mask)
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn contains(&self, c: &SquareClass) -> bool {
        self.mask & (1 << c.index()) != 0
    }

    // never empty: a subgroup contains the identity
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.mask == 1
    }

    pub fn members(&self) -> Vec<SquareClass> {
        SquareClass::all(self.field)
            .into_iter()
            .filter(|c| self.contains(c))
            .collect()
    }
}

impl fmt::Display for ClassSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members().iter().map(|c| c.name()).collect();
        write!(f, "{{{}}}", names.join(" "))
    }
}

impl Serialize for ClassSubgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members().iter().map(|c| c.name()))
    }
}

/// `χ_a(x) = (a, x)_E`.
pub fn chi_a_eval(a: &FieldElement, x: &FieldElement) -> Result<Sign> {
    hilbert(a, x)
}

/// Opaque label for a character `ω` of the squares of the center.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CentralTag(pub String);

impl CentralTag {
    pub fn new(s: impl Into<String>) -> Self {
        CentralTag(s.into())
    }
}

/// A genuine character of the center's cover, as a point of the torsor over
/// `ω`: a base point for the tag twisted by `χ_a` for `a` in `twist`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenuineZCharacter {
    pub central_tag: CentralTag,
    pub twist: SquareClass,
}

impl GenuineZCharacter {
    pub fn twisted(&self, c: &SquareClass) -> Self {
        GenuineZCharacter {
            central_tag: self.central_tag.clone(),
            twist: self.twist.mul(c),
        }
    }
}

impl fmt::Display for GenuineZCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.central_tag.0, self.twist)
    }
}

/// All genuine characters restricting to a fixed `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    pub central_tag: CentralTag,
    pub members: [GenuineZCharacter; 4],
}

impl OmegaSet {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, mu: &GenuineZCharacter) -> bool {
        self.members.contains(mu)
    }
}

pub fn omega_of(field: LocalField, tag: CentralTag) -> OmegaSet {
    let members = SquareClass::all(field).map(|c| GenuineZCharacter {
        central_tag: tag.clone(),
        twist: c,
    });
    OmegaSet {
        central_tag: tag,
        members,
    }
}

/// `μ^a(x, ε) = (x, a) μ(x, ε)`.
pub fn conjugate_char(mu: &GenuineZCharacter, a: &FieldElement) -> Result<GenuineZCharacter> {
    if a.field() != mu.twist.field() {
        return Err(Error::FieldMismatch(
            a.field().to_string(),
            mu.twist.field().to_string(),
        ));
    }
    Ok(mu.twisted(&a.square_class()?))
}

fn require_extension(e: LocalField) -> Result<()> {
    if e.is_base() {
        Err(Error::BaseFieldInput(e.to_string()))
    } else {
        Ok(())
    }
}

/// Image of `F^×` in `E^×/E^×2`.
pub fn f_image_classes(e: LocalField) -> Result<ClassSubgroup> {
    require_extension(e)?;
    let classes = SquareClass::all(e.base_field())
        .iter()
        .map(|c| c.rep().embed(e)?.square_class())
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassSubgroup::generated_by(e, &classes))
}

/// `[E^× : F^× E^×2]`.
pub fn index_fesq(e: LocalField) -> Result<usize> {
    Ok(4 / f_image_classes(e)?.len())
}

/// Number of `a` in `E^×/E^×2` with `(a, f)_E = 1` for every `f` in `F^×`.
pub fn count_agreeing_extensions(e: LocalField) -> Result<usize> {
    require_extension(e)?;
    let f_reps = SquareClass::all(e.base_field())
        .iter()
        .map(|c| c.rep().embed(e))
        .collect::<Result<Vec<_>>>()?;
    let mut count = 0;
    for a in SquareClass::all(e) {
        let a = a.rep();
        let mut agrees = true;
        for f in &f_reps {
            agrees &= hilbert(&a, f)?.is_plus();
        }
        count += agrees as usize;
    }
    Ok(count)
}
