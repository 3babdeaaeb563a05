use std::fmt;

use crate::error::{Error, Result};
use crate::local_field::{FieldElement, LocalField};

/// An invertible 2x2 matrix `(a, b; c, d)` over a local field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
    det: FieldElement,
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        a.check_same_field(&b)?;
        a.check_same_field(&c)?;
        a.check_same_field(&d)?;
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat2 { a, b, c, d, det })
    }

    /// Build from integers (convenient in tests and examples).
    pub fn from_ints(field: LocalField, [a, b, c, d]: [i64; 4]) -> Result<Self> {
        let e = |n| FieldElement::from_int(field, n);
        Mat2::new(e(a), e(b), e(c), e(d))
    }

    /// Parse `a,b;c,d` with entries in the element syntax of [`FieldElement::parse`].
    pub fn parse(field: LocalField, s: &str) -> Result<Self> {
        let rows: Vec<&str> = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(';')
            .collect();
        let entries: Vec<&str> = rows
            .iter()
            .flat_map(|r| r.split(','))
            .map(str::trim)
            .collect();
        if rows.len() != 2 || entries.len() != 4 {
            return Err(Error::parse(0, "expected a matrix `a,b;c,d`"));
        }
        let parsed = entries
            .iter()
            .map(|t| FieldElement::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [FieldElement; 4] = parsed.try_into().expect("four entries");
        Mat2::new(a, b, c, d)
    }

    pub fn identity(field: LocalField) -> Self {
        Mat2::from_ints(field, [1, 0, 0, 1]).expect("identity is invertible")
    }

    /// `w = (0, -1; 1, 0)`.
    pub fn weyl(field: LocalField) -> Self {
        Mat2::from_ints(field, [0, -1, 1, 0]).expect("w is invertible")
    }

    pub fn diag(x: FieldElement, y: FieldElement) -> Result<Self> {
        let zero = FieldElement::zero(x.field());
        Mat2::new(x, zero.clone(), zero, y)
    }

    pub fn scalar(z: FieldElement) -> Result<Self> {
        Mat2::diag(z.clone(), z)
    }

    /// `(1, x; 0, 1)`.
    pub fn unipotent(x: FieldElement) -> Self {
        let f = x.field();
        Mat2::new(
            FieldElement::one(f),
            x,
            FieldElement::zero(f),
            FieldElement::one(f),
        )
        .expect("unipotent is invertible")
    }

    pub fn entries(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn d(&self) -> &FieldElement {
        &self.d
    }

    pub fn det(&self) -> &FieldElement {
        &self.det
    }

    pub fn field(&self) -> LocalField {
        self.a.field()
    }

    pub fn is_sl2(&self) -> bool {
        self.det.is_one()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }

    /// All entries lie in the base field `F`.
    pub fn is_base_rational(&self) -> bool {
        self.entries().iter().all(|x| x.is_base_rational())
    }

    pub fn check_same_field(&self, other: &Mat2) -> Result<()> {
        self.a.check_same_field(&other.a)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &(&self.a * &rhs.a) + &(&self.b * &rhs.c);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.d);
        let c = &(&self.c * &rhs.a) + &(&self.d * &rhs.c);
        let d = &(&self.c * &rhs.b) + &(&self.d * &rhs.d);
        Mat2 {
            a,
            b,
            c,
            d,
            det: &self.det * &rhs.det,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let inv = self.det.inverse().expect("det is nonzero");
        Mat2 {
            a: &self.d * &inv,
            b: &(-&self.b) * &inv,
            c: &(-&self.c) * &inv,
            d: &self.a * &inv,
            det: inv,
        }
    }

    /// Left multiplication by `diag(x, y)`.
    pub(crate) fn scale_rows(&self, x: &FieldElement, y: &FieldElement) -> Mat2 {
        Mat2 {
            a: x * &self.a,
            b: x * &self.b,
            c: y * &self.c,
            d: y * &self.d,
            det: &(x * y) * &self.det,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_inverse() {
        let f = LocalField::unramified(5, 2).unwrap();
        let g = Mat2::parse(f, "1:1,2;3/5,0:7").unwrap();
        let h = Mat2::parse(f, "2,0;1,-1").unwrap();
        assert_eq!(g.mul(&g.inverse()), Mat2::identity(f));
        assert_eq!(g.inverse().mul(&g), Mat2::identity(f));
        assert_eq!(g.mul(&h).det(), &(g.det() * h.det()));
        let w = Mat2::weyl(f);
        assert_eq!(w.mul(&w), Mat2::from_ints(f, [-1, 0, 0, -1]).unwrap());
    }

    #[test]
    fn singular_rejected() {
        let f = LocalField::base(5).unwrap();
        assert_eq!(Mat2::from_ints(f, [1, 2, 2, 4]), Err(Error::SingularMatrix));
        assert!(Mat2::parse(f, "1,2,3").is_err());
    }

    #[test]
    fn display_parses_back() {
        let f = LocalField::ramified(3, 3).unwrap();
        let g = Mat2::parse(f, "[1/2:1, 0; -3, 5:-2/7]").unwrap();
        assert_eq!(Mat2::parse(f, &g.to_string()).unwrap(), g);
    }
}
