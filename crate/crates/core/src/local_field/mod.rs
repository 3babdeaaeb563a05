//! Exact arithmetic in `Q_p` and its quadratic extensions `Q_p(sqrt d)` for
//! odd `p`.
//!
//! Elements are pairs of exact rationals `a + b sqrt(d)`. Rationals are dense
//! in `Q_p`, and every invariant used downstream (valuation, residue,
//! square class, Hilbert symbol) is computed exactly from them.

mod element;
mod residue;
mod square_class;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub use element::FieldElement;
pub use residue::ResidueElement;
pub use square_class::{square_class_reps, SquareClass};

use crate::error::{Error, Result};
use crate::padic;

/// Which field over `Q_p` we are in. `d` is normalized to an integer:
/// a unit for `Unramified`, with `v_p(d) = 1` for `Ramified`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    Base,
    Unramified(i64),
    Ramified(i64),
}

/// Extension descriptor as supplied by a caller, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionSpec {
    Base,
    Unramified(BigRational),
    Ramified(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalField {
    p: u64,
    ext: Extension,
    // canonical non-square unit, as integer coordinates (a, b) of a + b sqrt(d)
    unit: (i64, i64),
}

impl LocalField {
    pub fn new(p: u64, spec: ExtensionSpec) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenResidueCharUnsupported);
        }
        if !padic::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ext = match spec {
            ExtensionSpec::Base => Extension::Base,
            ExtensionSpec::Unramified(d) => {
                let d = normalize_d(&d, p)?;
                match padic::vp_int(&BigInt::from(d), p) {
                    0 if euler_is_square(d, p) => return Err(Error::DIsSquare(d.to_string())),
                    0 => Extension::Unramified(d),
                    _ => {
                        return Err(Error::InvalidExtension(format!(
                            "unramified extension needs a p-adic unit, got {d}"
                        )))
                    }
                }
            }
            ExtensionSpec::Ramified(d) => {
                let d = normalize_d(&d, p)?;
                match padic::vp_int(&BigInt::from(d), p) {
                    1 => Extension::Ramified(d),
                    _ if euler_is_square(d, p) => return Err(Error::DIsSquare(d.to_string())),
                    _ => {
                        return Err(Error::InvalidExtension(format!(
                            "ramified extension needs odd p-adic valuation, got {d}"
                        )))
                    }
                }
            }
        };
        let mut field = LocalField {
            p,
            ext,
            unit: (0, 0),
        };
        field.unit = field.find_nonsquare_unit();
        Ok(field)
    }

    pub fn base(p: u64) -> Result<Self> {
        Self::new(p, ExtensionSpec::Base)
    }

    pub fn unramified(p: u64, d: i64) -> Result<Self> {
        Self::new(p, ExtensionSpec::Unramified(padic::rat(d)))
    }

    pub fn ramified(p: u64, d: i64) -> Result<Self> {
        Self::new(p, ExtensionSpec::Ramified(padic::rat(d)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension(&self) -> Extension {
        self.ext
    }

    pub fn is_base(&self) -> bool {
        self.ext == Extension::Base
    }

    /// `d` for extensions, `None` for `Q_p`.
    pub fn d(&self) -> Option<i64> {
        match self.ext {
            Extension::Base => None,
            Extension::Unramified(d) | Extension::Ramified(d) => Some(d),
        }
    }

    pub fn residue_degree(&self) -> u32 {
        match self.ext {
            Extension::Unramified(_) => 2,
            _ => 1,
        }
    }

    pub fn ramification_index(&self) -> u32 {
        match self.ext {
            Extension::Ramified(_) => 2,
            _ => 1,
        }
    }

    /// Size `q` of the residue field.
    pub fn residue_order(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }

    /// The field `Q_p` below this one (itself for `Q_p`).
    pub fn base_field(&self) -> LocalField {
        LocalField::base(self.p).expect("p already validated")
    }

    /// `p` for `Q_p` and unramified extensions, `sqrt(d)` when ramified.
    pub fn uniformizer(&self) -> FieldElement {
        match self.ext {
            Extension::Ramified(_) => FieldElement::sqrt_d(*self).expect("extension"),
            _ => FieldElement::from_int(*self, self.p as i64),
        }
    }

    /// The fixed non-square unit `u` used for square-class representatives.
    pub fn nonsquare_unit(&self) -> FieldElement {
        FieldElement::new(*self, padic::rat(self.unit.0), padic::rat(self.unit.1))
            .expect("coordinates valid for field")
    }

    /// Whether `-1` is a square.
    pub fn minus_one_is_square(&self) -> bool {
        ResidueElement::from_int(*self, -1).is_square()
    }

    fn find_nonsquare_unit(&self) -> (i64, i64) {
        match self.ext {
            Extension::Unramified(_) => {
                // sqrt(d) itself, else the first k + sqrt(d)
                (0..self.p as i64)
                    .map(|k| (k, 1))
                    .find(|&(k, b)| !ResidueElement::new(*self, k as u64, b as u64).is_square())
                    .expect("F_p^2 has non-squares of the form k + s")
            }
            _ => (2..self.p as i64)
                .map(|n| (n, 0))
                .find(|&(n, _)| !euler_is_square(n, self.p))
                .expect("F_p has a non-square"),
        }
    }
}

/// Euler criterion on an integer unit.
fn euler_is_square(n: i64, p: u64) -> bool {
    let r = n.rem_euclid(p as i64) as u64;
    let mut acc = 1u128;
    let mut base = r as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc == 1
}

/// Replace `d = n/m` by the integer `n*m` with even powers of `p` removed;
/// this does not change `Q_p(sqrt d)`.
fn normalize_d(d: &BigRational, p: u64) -> Result<i64> {
    if d.is_zero() {
        return Err(Error::InvalidExtension("d must be nonzero".into()));
    }
    let mut n = d.numer() * d.denom();
    let p2 = BigInt::from(p * p);
    while (&n % &p2).is_zero() {
        n /= &p2;
    }
    n.to_i64()
        .ok_or_else(|| Error::InvalidExtension(format!("d = {n} does not fit in 64 bits")))
}

impl fmt::Display for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ext {
            Extension::Base => write!(f, "Qp({})", self.p),
            Extension::Unramified(d) => write!(f, "Qp({})[unram:{}]", self.p, d),
            Extension::Ramified(d) => write!(f, "Qp({})[ram:{}]", self.p, d),
        }
    }
}

impl FromStr for LocalField {
    type Err = Error;

    /// Grammar: `Qp(<p>)`, `Qp(<p>)[unram:<d>]`, `Qp(<p>)[ram:<d>]`, with
    /// `<d>` an integer or a fraction `n/m`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { s, pos: 0 };
        cur.skip_ws();
        cur.expect("Qp(")?;
        let p_pos = cur.pos;
        let p = cur.unsigned()?;
        cur.expect(")")?;
        let spec = if cur.eat("[") {
            let kind_pos = cur.pos;
            let unram = if cur.eat("unram") {
                true
            } else if cur.eat("ram") {
                false
            } else {
                return Err(Error::parse(kind_pos, "expected `unram` or `ram`"));
            };
            cur.expect(":")?;
            let d = cur.rational()?;
            cur.expect("]")?;
            if unram {
                ExtensionSpec::Unramified(d)
            } else {
                ExtensionSpec::Ramified(d)
            }
        } else {
            ExtensionSpec::Base
        };
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(Error::parse(cur.pos, "trailing input"));
        }
        LocalField::new(p, spec).map_err(|e| match e {
            Error::NotPrime(_) | Error::EvenResidueCharUnsupported => e,
            other => Error::parse(p_pos, other.to_string()),
        })
    }
}

/// Minimal cursor for the small grammars used by field specs and elements.
pub(crate) struct Cursor<'a> {
    pub(crate) s: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{tok}`")))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let rest = self.rest();
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return Err(Error::parse(self.pos, "expected digits"));
        }
        self.pos += n;
        Ok(&rest[..n])
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    pub(crate) fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let neg = self.eat("-");
        let num: BigInt = self.digits()?.parse().expect("digits parse");
        let den_pos = self.pos;
        let den: BigInt = if self.eat("/") {
            self.digits()?.parse().expect("digits parse")
        } else {
            BigInt::from(1)
        };
        if den.is_zero() {
            return Err(Error::parse(den_pos, "zero denominator"));
        }
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    }
}
