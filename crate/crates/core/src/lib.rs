//! Exact computation in the metaplectic double cover of `GL2(E)` for `E` a
//! p-adic field of odd residue characteristic: Hilbert symbols, the Kubota
//! cocycle, genuine characters of the cover of the center, Weil indices and
//! the finite combinatorics of restriction to `SL2`.

pub mod branching;
pub mod characters;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod kubota;
pub mod local_field;
mod padic;
pub mod sample;
pub mod sign;
pub mod weil;

pub use error::{Error, Result};
pub use hilbert::{hilbert, hilbert_via_norm, pairing_table};
pub use kubota::{
    beta, beta_sl2, check_cocycle, commutator_pairing, is_split_on_gl2f, Mat2, MetaElement,
};
pub use local_field::{
    square_class_reps, Extension, ExtensionSpec, FieldElement, LocalField, ResidueElement,
    SquareClass,
};
pub use sign::Sign;
