use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Cursor, Extension, LocalField, ResidueElement, SquareClass};
use crate::error::{Error, Result};
use crate::padic;

/// `a + b sqrt(d)` with exact rational coordinates; `b = 0` over `Q_p`.
///
/// Stored as `(x + y sqrt(d)) / den` with `den > 0` and
/// `gcd(x, y, den) = 1`, so equal elements have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: LocalField,
    x: BigInt,
    y: BigInt,
    den: BigInt,
}

impl FieldElement {
    fn from_parts(field: LocalField, mut x: BigInt, mut y: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            x = -x;
            y = -y;
            den = -den;
        }
        let g = x.gcd(&y).gcd(&den);
        if !g.is_one() {
            x /= &g;
            y /= &g;
            den /= &g;
        }
        FieldElement { field, x, y, den }
    }

    pub fn new(field: LocalField, a: BigRational, b: BigRational) -> Result<Self> {
        if field.is_base() && !b.is_zero() {
            return Err(Error::InvalidExtension(format!(
                "{field} has no sqrt(d) coordinate"
            )));
        }
        let den = a.denom().lcm(b.denom());
        let x = a.numer() * (&den / a.denom());
        let y = b.numer() * (&den / b.denom());
        Ok(Self::from_parts(field, x, y, den))
    }

    pub fn from_rational(field: LocalField, a: BigRational) -> Self {
        let (x, den) = a.into();
        FieldElement {
            field,
            x,
            y: BigInt::zero(),
            den,
        }
    }

    pub fn from_int(field: LocalField, n: i64) -> Self {
        FieldElement {
            field,
            x: n.into(),
            y: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn from_ratio(field: LocalField, num: i64, den: i64) -> Self {
        Self::from_rational(field, BigRational::new(num.into(), den.into()))
    }

    pub fn zero(field: LocalField) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: LocalField) -> Self {
        Self::from_int(field, 1)
    }

    pub fn sqrt_d(field: LocalField) -> Result<Self> {
        if field.is_base() {
            return Err(Error::BaseFieldHasNoProperNorm);
        }
        Ok(FieldElement {
            field,
            x: BigInt::zero(),
            y: BigInt::one(),
            den: BigInt::one(),
        })
    }

    /// Parse `a` or `a:b` (meaning `a + b sqrt(d)`), with `a`, `b` integers or
    /// fractions.
    pub fn parse(field: LocalField, s: &str) -> Result<Self> {
        let mut cur = Cursor { s, pos: 0 };
        let a = cur.rational()?;
        let b = if cur.eat(":") {
            cur.rational()?
        } else {
            BigRational::zero()
        };
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(Error::parse(cur.pos, "trailing input in element"));
        }
        Self::new(field, a, b).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn a(&self) -> BigRational {
        BigRational::new(self.x.clone(), self.den.clone())
    }

    pub fn b(&self) -> BigRational {
        BigRational::new(self.y.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero() && self.den.is_one()
    }

    /// True when the element lies in the base field `Q_p`.
    pub fn is_base_rational(&self) -> bool {
        self.y.is_zero()
    }

    fn d_int(&self) -> BigInt {
        BigInt::from(self.field.d().unwrap_or(0))
    }

    pub fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn check_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroElement)
        } else {
            Ok(())
        }
    }

    pub fn conjugate(&self) -> Self {
        FieldElement {
            field: self.field,
            x: self.x.clone(),
            y: -&self.y,
            den: self.den.clone(),
        }
    }

    /// `x^2 - d y^2`, the norm times `den^2`.
    fn norm_numer(&self) -> BigInt {
        &self.x * &self.x - self.d_int() * &self.y * &self.y
    }

    /// `N(a + b sqrt d) = a^2 - d b^2`, as an element of `Q_p`.
    pub fn norm(&self) -> Result<FieldElement> {
        if self.field.is_base() {
            return Err(Error::BaseFieldHasNoProperNorm);
        }
        let n = BigRational::new(self.norm_numer(), &self.den * &self.den);
        Ok(FieldElement::from_rational(self.field.base_field(), n))
    }

    /// `Tr(a + b sqrt d) = 2a` (just `a` over `Q_p`).
    pub fn trace(&self) -> BigRational {
        if self.field.is_base() {
            self.a()
        } else {
            self.a() * padic::rat(2)
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.check_nonzero()?;
        // den / (x + y sqrt d) = den (x - y sqrt d) / (x^2 - d y^2)
        Ok(Self::from_parts(
            self.field,
            &self.den * &self.x,
            -(&self.den * &self.y),
            self.norm_numer(),
        ))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElement::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Normalized additive valuation of the field (`v(uniformizer) = 1`).
    pub fn valuation(&self) -> Result<i64> {
        Ok(self.valuation_and_unit()?.0)
    }

    /// `x * uniformizer^(-v(x))`, a unit of the ring of integers.
    pub fn unit_normalized(&self) -> Result<FieldElement> {
        let v = self.valuation()?;
        Ok(self * &self.field.uniformizer().pow(-v)?)
    }

    /// Residue of `x * uniformizer^(-v(x))`.
    pub fn unit_part(&self) -> Result<ResidueElement> {
        Ok(self.valuation_and_unit()?.1)
    }

    /// `(v(x), residue of x * uniformizer^(-v(x)))`, read off the
    /// coordinates without forming the quotient.
    pub fn valuation_and_unit(&self) -> Result<(i64, ResidueElement)> {
        let p = self.field.p();
        let (vd, rd) = padic::split_int(&self.den, p);
        let rd_inv = padic::pow_mod(rd, p - 2, p) as u128;
        let coord = |n: &BigInt| {
            (!n.is_zero()).then(|| {
                let (v, r) = padic::split_int(n, p);
                (v - vd, (r as u128 * rd_inv % p as u128) as u64)
            })
        };
        let (ua, ub) = (coord(&self.x), coord(&self.y));
        let res = |r0, r1| ResidueElement::new(self.field, r0, r1);
        match self.field.extension() {
            Extension::Base => ua.map(|(v, r)| (v, res(r, 0))),
            Extension::Unramified(_) => match (ua, ub) {
                (None, None) => None,
                (Some((v, r)), None) => Some((v, res(r, 0))),
                (None, Some((v, r))) => Some((v, res(0, r))),
                (Some((va, ra)), Some((vb, rb))) => {
                    let v = va.min(vb);
                    Some((
                        v,
                        res(if va == v { ra } else { 0 }, if vb == v { rb } else { 0 }),
                    ))
                }
            },
            Extension::Ramified(d) => {
                // pi^2 = p d0; x / pi^(2m) = a / d^m + ..., x / pi^(2m+1) = b / d^m + ...
                let d0 = (d / p as i64).rem_euclid(p as i64) as u64;
                let scale = |m: i64, r: u64| {
                    let e = if m >= 0 {
                        m as u64 * (p - 2)
                    } else {
                        m.unsigned_abs()
                    };
                    (r as u128 * padic::pow_mod(d0, e, p) as u128 % p as u128) as u64
                };
                let even = ua.map(|(va, ra)| (2 * va, va, ra));
                let odd = ub.map(|(vb, rb)| (2 * vb + 1, vb, rb));
                let best = match (even, odd) {
                    (Some(e), Some(o)) => Some(if e.0 < o.0 { e } else { o }),
                    (e, o) => e.or(o),
                };
                best.map(|(v, m, r)| (v, res(scale(m, r), 0)))
            }
        }
        .ok_or(Error::ZeroElement)
    }

    /// Reduction modulo the maximal ideal; `None` if not integral.
    pub fn reduce(&self) -> Option<ResidueElement> {
        let p = self.field.p();
        let reduce = |r: &BigRational| {
            if r.is_zero() {
                Some(0)
            } else {
                padic::reduce_mod_p(r, p)
            }
        };
        let (a, b) = (self.a(), self.b());
        match self.field.extension() {
            Extension::Base => Some(ResidueElement::new(self.field, reduce(&a)?, 0)),
            Extension::Unramified(_) => {
                Some(ResidueElement::new(self.field, reduce(&a)?, reduce(&b)?))
            }
            Extension::Ramified(_) => {
                // b sqrt(d) lies in the maximal ideal as soon as b is integral
                reduce(&b)?;
                Some(ResidueElement::new(self.field, reduce(&a)?, 0))
            }
        }
    }

    pub fn is_square(&self) -> Result<bool> {
        Ok(self.square_class()?.is_identity())
    }

    pub fn square_class(&self) -> Result<SquareClass> {
        let (v, unit) = self.valuation_and_unit()?;
        let unit_square = unit.is_square();
        Ok(SquareClass::from_parts(
            self.field,
            !unit_square,
            v.rem_euclid(2) == 1,
        ))
    }

    /// Embed an element of the base field into the extension `target`.
    pub fn embed(&self, target: LocalField) -> Result<FieldElement> {
        if (self.field != target.base_field() && self.field != target) || !self.y.is_zero() {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                target.to_string(),
            ));
        }
        Ok(FieldElement {
            field: target,
            ..self.clone()
        })
    }

    /// View an element with `b = 0` as an element of `Q_p`.
    pub fn restrict_to_base(&self) -> Option<FieldElement> {
        self.y.is_zero().then(|| FieldElement {
            field: self.field.base_field(),
            ..self.clone()
        })
    }
}

fn same_field(x: &FieldElement, y: &FieldElement) {
    assert_eq!(x.field, y.field, "arithmetic across different fields");
}

/// `(x1 + y1 s) / den1 ± (x2 + y2 s) / den2`.
fn add_signed(l: &FieldElement, r: &FieldElement, negate: bool) -> FieldElement {
    same_field(l, r);
    let (x2, y2) = if negate {
        (-&r.x, -&r.y)
    } else {
        (r.x.clone(), r.y.clone())
    };
    if l.den == r.den {
        return FieldElement::from_parts(l.field, &l.x + x2, &l.y + y2, l.den.clone());
    }
    FieldElement::from_parts(
        l.field,
        &l.x * &r.den + x2 * &l.den,
        &l.y * &r.den + y2 * &l.den,
        &l.den * &r.den,
    )
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        add_signed(self, rhs, false)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        add_signed(self, rhs, true)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        same_field(self, rhs);
        let (x, y) = if self.y.is_zero() && rhs.y.is_zero() {
            (&self.x * &rhs.x, BigInt::zero())
        } else {
            (
                &self.x * &rhs.x + self.d_int() * &self.y * &rhs.y,
                &self.x * &rhs.y + &self.y * &rhs.x,
            )
        };
        FieldElement::from_parts(self.field, x, y, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`FieldElement::inverse`] for a checked path.
impl Div for &FieldElement {
    type Output = FieldElement;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inverse().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            x: -&self.x,
            y: -&self.y,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.a())
        } else {
            write!(f, "{}:{}", self.a(), self.b())
        }
    }
}
