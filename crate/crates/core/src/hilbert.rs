//! Quadratic Hilbert symbol at odd residue characteristic via the tame symbol.

use crate::error::{Error, Result};
use crate::local_field::{square_class_reps, FieldElement, LocalField, ResidueElement};
pub use crate::sign::Sign;

/// `(x, y)_E`.
///
/// With `m = v(x)`, `n = v(y)`, the element `t = (-1)^{mn} x^n y^{-m}` is a
/// unit, and the symbol is the quadratic character of its residue.
pub fn hilbert(x: &FieldElement, y: &FieldElement) -> Result<Sign> {
    x.check_same_field(y)?;
    let m = x.valuation()?;
    let n = y.valuation()?;
    let field = x.field();
    let t = ResidueElement::from_int(field, if (m * n).rem_euclid(2) == 0 { 1 } else { -1 })
        .mul(&x.unit_part()?.powi(n))
        .mul(&y.unit_part()?.powi(-m));
    Ok(t.quadratic_character())
}

/// `(a, N b)_F` for `a` in `F^×` and `b` in `E^×`; equals `(a, b)_E`.
pub fn hilbert_via_norm(a: &FieldElement, b: &FieldElement) -> Result<Sign> {
    let e = b.field();
    if e.is_base() {
        return Err(Error::BaseFieldInput(e.to_string()));
    }
    if a.field() != e.base_field() {
        return Err(Error::FieldMismatch(
            a.field().to_string(),
            e.base_field().to_string(),
        ));
    }
    hilbert(a, &b.norm()?)
}

/// Symbol values on the canonical classes `1, u, π, uπ`.
pub fn pairing_table(field: LocalField) -> [[Sign; 4]; 4] {
    let reps = square_class_reps(field).map(|c| c.rep());
    let mut table = [[Sign::Plus; 4]; 4];
    for (i, x) in reps.iter().enumerate() {
        for (j, y) in reps.iter().enumerate() {
            table[i][j] = hilbert(x, y).expect("representatives are nonzero");
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: LocalField, s: &str) -> FieldElement {
        FieldElement::parse(f, s).unwrap()
    }

    /// Conic oracle over `Q_p`: `(a, b) = +1` iff `z^2 = a x^2 + b y^2` has a
    /// nontrivial solution. For `v(a), v(b) <= 1`, not both 1, such a
    /// solution exists iff there is a primitive one mod p in which some
    /// coordinate with a unit coefficient is a unit (Hensel lifts it).
    fn oracle_qp(p: i64, a: i64, b: i64) -> Sign {
        let (a, b) = if a % p == 0 && b % p == 0 {
            // (a, b) = (a, -ab)
            (a, -a * b / (p * p))
        } else {
            (a, b)
        };
        let unit = |t: i64| t.rem_euclid(p) != 0;
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    if (a * x * x + b * y * y - z * z).rem_euclid(p) != 0 {
                        continue;
                    }
                    if (unit(a) && unit(x)) || (unit(b) && unit(y)) || unit(z) {
                        return Sign::Plus;
                    }
                }
            }
        }
        Sign::Minus
    }

    #[test]
    fn tame_formula_matches_conic_oracle() {
        for (p, vals) in [
            (5, [1, 2, 5, 10, -1, 3, 15]),
            (7, [1, 3, 7, 21, -1, -7, 14]),
            (3, [1, 2, 3, 6, -1, -3, 15]),
        ] {
            let f = LocalField::base(p as u64).unwrap();
            for a in vals {
                for b in vals {
                    let tame =
                        hilbert(&FieldElement::from_int(f, a), &FieldElement::from_int(f, b))
                            .unwrap();
                    assert_eq!(tame, oracle_qp(p, a, b), "({a},{b})_{p}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let q5 = LocalField::base(5).unwrap();
        assert_eq!(hilbert(&el(q5, "2"), &el(q5, "5")), Ok(Sign::Minus));
        assert_eq!(hilbert(&el(q5, "5"), &el(q5, "5")), Ok(Sign::Plus));
        assert_eq!(hilbert(&el(q5, "3/7"), &el(q5, "-3/7")), Ok(Sign::Plus));
        let q7 = LocalField::base(7).unwrap();
        // (7,7) = (7,-1) = Legendre(-1|7) = -1
        assert_eq!(hilbert(&el(q7, "7"), &el(q7, "7")), Ok(Sign::Minus));
    }

    #[test]
    fn base_pairs_trivial_in_extension() {
        let e = LocalField::unramified(5, 2).unwrap();
        for a in ["2", "5", "10", "3/25"] {
            for b in ["2", "5", "7", "1/5"] {
                assert_eq!(hilbert(&el(e, a), &el(e, b)), Ok(Sign::Plus));
            }
        }
    }

    #[test]
    fn via_norm_examples() {
        let q5 = LocalField::base(5).unwrap();
        let e = LocalField::ramified(5, 5).unwrap();
        let two = el(q5, "2");
        let sqrt5 = el(e, "0:1");
        assert_eq!(hilbert_via_norm(&two, &sqrt5), Ok(Sign::Minus));
        assert_eq!(hilbert(&two.embed(e).unwrap(), &sqrt5), Ok(Sign::Minus));
        assert_eq!(
            hilbert_via_norm(&el(q5, "1"), &el(e, "3:7")),
            Ok(Sign::Plus)
        );
        assert_eq!(
            hilbert_via_norm(&two, &el(q5, "2")),
            Err(Error::BaseFieldInput("Qp(5)".into()))
        );
    }

    #[test]
    fn errors() {
        let q5 = LocalField::base(5).unwrap();
        let q7 = LocalField::base(7).unwrap();
        assert_eq!(hilbert(&el(q5, "0"), &el(q5, "2")), Err(Error::ZeroElement));
        assert!(matches!(
            hilbert(&el(q5, "1"), &el(q7, "2")),
            Err(Error::FieldMismatch(..))
        ));
    }

    /// Bilinear closed form: `(u, u) = 1`, `(u, π) = -1`, `(π, π) = (π, -1)`,
    /// which is `+1` iff `-1` is a square.
    fn closed_form(f: LocalField, i: usize, j: usize) -> Sign {
        let (u1, p1, u2, p2) = (i & 1, i >> 1, j & 1, j >> 1);
        let mut s = Sign::from_bool((u1 & p2) ^ (p1 & u2) == 0);
        if p1 & p2 == 1 && !f.minus_one_is_square() {
            s = -s;
        }
        s
    }

    #[allow(clippy::needless_range_loop)]
    #[test]
    fn class_pairing_matches_closed_form() {
        for f in [
            LocalField::base(3).unwrap(),
            LocalField::base(5).unwrap(),
            LocalField::unramified(3, 2).unwrap(),
            LocalField::ramified(5, 10).unwrap(),
            LocalField::ramified(7, 7).unwrap(),
        ] {
            let t = pairing_table(f);
            let cs = square_class_reps(f);
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(t[i][j], closed_form(f, i, j), "{f} {i} {j}");
                    assert_eq!(cs[i].pairing(&cs[j]), t[i][j]);
                }
            }
        }
    }

    #[allow(clippy::needless_range_loop)]
    #[test]
    fn table_shape() {
        for f in [
            LocalField::base(5).unwrap(),
            LocalField::base(3).unwrap(),
            LocalField::unramified(7, 3).unwrap(),
            LocalField::ramified(3, 3).unwrap(),
        ] {
            let t = pairing_table(f);
            assert_eq!(t[0], [Sign::Plus; 4]);
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(t[i][j], t[j][i]);
                }
                if i != 0 {
                    assert!(t[i].contains(&Sign::Minus), "row {i} degenerate in {f}");
                }
            }
            // unit-unit entries
            assert_eq!(t[1][1], Sign::Plus);
        }
        let t = pairing_table(LocalField::base(5).unwrap());
        assert_eq!(t[1][2], Sign::Minus);
    }
}
