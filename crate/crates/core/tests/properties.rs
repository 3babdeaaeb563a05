use kubota_meta::branching::{orbit_invariant, whittaker_datum_eval, NilpotentSl2};
use kubota_meta::characters::{chi_a_eval, conjugate_char, omega_of, CentralTag};
use kubota_meta::kubota::{
    beta, beta_by_definition, check_cocycle, commutator_pairing, p_part, Mat2, MetaElement,
};
use kubota_meta::weil::{weil_index, AdditiveChar, EighthRoot};
use kubota_meta::{
    hilbert, hilbert_via_norm, FieldElement, LocalField, ResidueElement, SquareClass,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn fields() -> Vec<LocalField> {
    [
        "Qp(3)",
        "Qp(5)",
        "Qp(7)",
        "Qp(3)[unram:2]",
        "Qp(5)[unram:2]",
        "Qp(7)[unram:3]",
        "Qp(3)[ram:3]",
        "Qp(5)[ram:10]",
        "Qp(7)[ram:-7]",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn field_idx() -> impl Strategy<Value = usize> {
    0..9usize
}

type Raw = (i64, i64, i64, i64);

fn raw() -> impl Strategy<Value = Raw> {
    (-60i64..=60, 1i64..=60, -60i64..=60, 1i64..=60)
}

fn nonzero_raw() -> impl Strategy<Value = Raw> {
    raw().prop_filter("nonzero", |r| r.0 != 0 || r.2 != 0)
}

fn el(f: LocalField, (an, ad, bn, bd): Raw) -> FieldElement {
    let b = if f.is_base() { 0 } else { bn };
    FieldElement::new(
        f,
        BigRational::new(an.into(), ad.into()),
        BigRational::new(b.into(), bd.into()),
    )
    .unwrap()
}

/// Nonzero in every field: drops `b` over `Q_p`, so keep `a` nonzero there.
fn nz(f: LocalField, r: Raw) -> FieldElement {
    let x = el(f, r);
    if x.is_zero() {
        FieldElement::one(f)
    } else {
        x
    }
}

fn mat(f: LocalField, e: [Raw; 4], lower_zero: bool) -> Option<Mat2> {
    let c = if lower_zero {
        FieldElement::zero(f)
    } else {
        el(f, e[2])
    };
    Mat2::new(el(f, e[0]), el(f, e[1]), c, el(f, e[3])).ok()
}

fn mat_raw() -> impl Strategy<Value = ([Raw; 4], bool)> {
    ([raw(), raw(), raw(), raw()], prop::bool::weighted(0.2))
}

/// Squares of the residue field by enumeration.
fn residue_squares(f: LocalField) -> Vec<ResidueElement> {
    let p = f.p();
    let r1s = if f.residue_degree() == 2 { p } else { 1 };
    let mut out = Vec::new();
    for r0 in 0..p {
        for r1 in 0..r1s {
            let x = ResidueElement::new(f, r0, r1);
            out.push(x.mul(&x));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_is_additive(i in field_idx(), x in nonzero_raw(), y in nonzero_raw()) {
        let f = fields()[i];
        let (x, y) = (nz(f, x), nz(f, y));
        prop_assert_eq!((&x * &y).valuation()?, x.valuation()? + y.valuation()?);
    }

    #[test]
    fn square_class_ignores_squares(i in field_idx(), x in nonzero_raw(), y in nonzero_raw()) {
        let f = fields()[i];
        let (x, y) = (nz(f, x), nz(f, y));
        prop_assert_eq!((&x * &(&y * &y)).square_class()?, x.square_class()?);
    }

    #[test]
    fn unit_squares_match_enumeration(i in field_idx(), x in nonzero_raw()) {
        let f = fields()[i];
        let x = nz(f, x);
        let unit = x.unit_part()?;
        prop_assert!(!unit.is_zero());
        prop_assert_eq!(unit.is_square(), residue_squares(f).contains(&unit));
    }

    #[test]
    fn inverse_and_norm(i in 3..9usize, x in nonzero_raw(), y in nonzero_raw()) {
        let f = fields()[i];
        let (x, y) = (nz(f, x), nz(f, y));
        prop_assert!((&x * &x.inverse()?).is_one());
        let nxy = (&x * &y).norm()?;
        prop_assert_eq!(nxy, &x.norm()? * &y.norm()?);
        prop_assert_eq!(x.norm()?.embed(f)?, &x * &x.conjugate());
    }

    #[test]
    fn hilbert_laws(i in field_idx(), a in nonzero_raw(), b in nonzero_raw(), c in nonzero_raw(), s in nonzero_raw()) {
        let f = fields()[i];
        let (a, b, c, s) = (nz(f, a), nz(f, b), nz(f, c), nz(f, s));
        prop_assert_eq!(hilbert(&(&a * &b), &c)?, hilbert(&a, &c)? * hilbert(&b, &c)?);
        prop_assert_eq!(hilbert(&a, &b)?, hilbert(&b, &a)?);
        prop_assert_eq!(hilbert(&(&a * &(&s * &s)), &b)?, hilbert(&a, &b)?);
        prop_assert!(hilbert(&a, &(-&a))?.is_plus());
    }

    #[test]
    fn norm_compatibility(i in 3..9usize, a in (-60i64..=60, 1i64..=60), b in nonzero_raw()) {
        let e = fields()[i];
        let f = e.base_field();
        prop_assume!(a.0 != 0);
        let a = FieldElement::from_ratio(f, a.0, a.1);
        let b = nz(e, b);
        prop_assert_eq!(hilbert_via_norm(&a, &b)?, hilbert(&a.embed(e)?, &b)?);
    }

    #[test]
    fn base_pairs_trivial_in_extension(i in 3..9usize, a in (1i64..=60, 1i64..=60), b in (-60i64..=-1, 1i64..=60)) {
        let e = fields()[i];
        let (a, b) = (FieldElement::from_ratio(e, a.0, a.1), FieldElement::from_ratio(e, b.0, b.1));
        prop_assert!(hilbert(&a, &b)?.is_plus());
    }

    #[test]
    fn cocycle_identity(i in field_idx(), m1 in mat_raw(), m2 in mat_raw(), m3 in mat_raw()) {
        let f = fields()[i];
        let (Some(g1), Some(g2), Some(g3)) = (mat(f, m1.0, m1.1), mat(f, m2.0, m2.1), mat(f, m3.0, m3.1)) else {
            return Ok(());
        };
        prop_assert!(check_cocycle(&g1, &g2, &g3)?);
        let (x1, x2, x3) = (MetaElement::lift(g1), MetaElement::lift(g2), MetaElement::new(g3, kubota_meta::Sign::Minus));
        prop_assert_eq!(x1.mul(&x2)?.mul(&x3)?, x1.mul(&x2.mul(&x3)?)?);
        let inv = x3.inv()?;
        prop_assert_eq!(x3.mul(&inv)?, MetaElement::identity(f));
    }

    #[test]
    fn beta_matches_literal_evaluation(i in field_idx(), m1 in mat_raw(), m2 in mat_raw()) {
        let f = fields()[i];
        let (Some(g1), Some(g2)) = (mat(f, m1.0, m1.1), mat(f, m2.0, m2.1)) else {
            return Ok(());
        };
        prop_assert_eq!(beta(&g1, &g2)?, beta_by_definition(&g1, &g2)?);
    }

    #[test]
    fn borel_and_unipotent(i in field_idx(), m1 in mat_raw(), m2 in mat_raw()) {
        let f = fields()[i];
        let (Some(b1), Some(b2)) = (mat(f, m1.0, true), mat(f, m2.0, true)) else {
            return Ok(());
        };
        prop_assert_eq!(beta(&b1, &b2)?, hilbert(b1.a(), b2.d())?);
        let (n1, n2) = (Mat2::unipotent(el(f, m1.0[1])), Mat2::unipotent(el(f, m2.0[1])));
        prop_assert!(beta(&n1, &n2)?.is_plus());
    }

    #[test]
    fn split_over_base_field(i in 3..9usize, m1 in mat_raw(), m2 in mat_raw()) {
        let f = fields()[i];
        let strip = |r: Raw| (r.0, r.1, 0, 1);
        let (Some(g1), Some(g2)) = (mat(f, m1.0.map(strip), m1.1), mat(f, m2.0.map(strip), m2.1)) else {
            return Ok(());
        };
        prop_assert!(beta(&g1, &g2)?.is_plus());
    }

    #[test]
    fn commutator_is_hilbert_of_det(i in field_idx(), z in nonzero_raw(), m in mat_raw()) {
        let f = fields()[i];
        let Some(g) = mat(f, m.0, m.1) else { return Ok(()) };
        let z = nz(f, z);
        prop_assert_eq!(commutator_pairing(&z, &g)?, hilbert(&z, g.det())?);
    }

    #[test]
    fn quadratic_characters_see_classes(i in field_idx(), a in nonzero_raw(), s in nonzero_raw(), x in nonzero_raw()) {
        let f = fields()[i];
        let (a, s, x) = (nz(f, a), nz(f, s), nz(f, x));
        prop_assert_eq!(chi_a_eval(&(&a * &(&s * &s)), &x)?, chi_a_eval(&a, &x)?);
    }

    #[test]
    fn twisting_is_simply_transitive(i in field_idx(), a in nonzero_raw()) {
        let f = fields()[i];
        let omega = omega_of(f, CentralTag::new("w"));
        let a = nz(f, a);
        let c = a.square_class()?;
        let images: Vec<_> = omega.members.iter().map(|m| conjugate_char(m, &a)).collect::<Result<_, _>>()?;
        for (m, im) in omega.members.iter().zip(&images) {
            prop_assert!(omega.contains(im));
            prop_assert_eq!(im == m, c.is_identity());
        }
        for (j, im) in images.iter().enumerate() {
            prop_assert!(images[..j].iter().all(|o| o != im));
        }
    }

    #[test]
    fn weil_index_sees_classes(i in field_idx(), k in 0..4usize, s in nonzero_raw(), psi_exp in -2i64..=1) {
        let f = fields()[i];
        let c = SquareClass::from_index(f, k);
        let s = nz(f, s);
        let psi = AdditiveChar::with_scale(f.uniformizer().pow(psi_exp)?)?;
        let g = weil_index(&c.rep(), &psi)?;
        prop_assert_eq!(g.pow(8), EighthRoot::ONE);
        prop_assert_eq!(weil_index(&(&c.rep() * &(&s * &s)), &psi)?, g);
    }

    #[test]
    fn additive_character_is_a_homomorphism(i in field_idx(), x in raw(), y in raw(), s in nonzero_raw()) {
        let f = fields()[i];
        let psi = AdditiveChar::with_scale(nz(f, s))?;
        let (x, y) = (el(f, x), el(f, y));
        prop_assert_eq!(psi.eval(&(&x + &y)), &psi.eval(&x) * &psi.eval(&y));
    }

    #[test]
    fn orbit_class_is_conjugation_invariant(i in field_idx(), a in nonzero_raw(), m in mat_raw(), x in raw()) {
        let f = fields()[i];
        let Some(g) = mat(f, m.0, m.1) else { return Ok(()) };
        let g = p_part(&g);
        let a = nz(f, a);
        let y = NilpotentSl2::y_a(a.clone())?;
        prop_assert_eq!(orbit_invariant(&y), a.square_class()?);
        prop_assert_eq!(orbit_invariant(&y.conjugate(&g)?), orbit_invariant(&y));
        let psi = AdditiveChar::standard(f);
        let x = el(f, x);
        prop_assert_eq!(whittaker_datum_eval(&a, &x, &psi)?, psi.eval(&(&a * &x)));
    }
}
