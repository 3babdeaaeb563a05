//! Finite data attached to restriction from the cover of `GL2` to the cover
//! of `SL2`: self-twist groups, multiplicities, packet sizes, Whittaker
//! supports, and the nilpotent orbits that index Whittaker data.

use std::fmt;

use serde::Serialize;

use crate::characters::ClassSubgroup;
use crate::error::{Error, Result};
use crate::hilbert::hilbert;
use crate::kubota::Mat2;
use crate::local_field::{FieldElement, LocalField, SquareClass};
use crate::sign::Sign;
use crate::weil::{AdditiveChar, RootOfUnity};

/// `(a, -1)` on the canonical representative of the class.
pub fn minus_one_pairing(a: &SquareClass) -> Sign {
    let f = a.field();
    hilbert(&a.rep(), &FieldElement::from_int(f, -1)).expect("nonzero arguments")
}

/// The finite shadow of a genuine representation `τ`: its self-twist group
/// `S`, whether it is discrete series, and its Whittaker support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTwistModel {
    field: LocalField,
    s: ClassSubgroup,
    discrete: bool,
    whittaker_support: Vec<SquareClass>,
}

impl TauTwistModel {
    pub fn new(
        s: ClassSubgroup,
        discrete: bool,
        whittaker_support: &[SquareClass],
    ) -> Result<Self> {
        let field = s.field();
        let mut support: Vec<SquareClass> = Vec::new();
        for c in whittaker_support {
            if c.field() != field {
                return Err(Error::FieldMismatch(
                    c.field().to_string(),
                    field.to_string(),
                ));
            }
            if !support.contains(c) {
                support.push(*c);
            }
        }
        support.sort_by_key(|c| c.index());
        if support.is_empty() {
            return Err(Error::InvalidModel("Whittaker support is empty".into()));
        }
        if !discrete {
            if let Some(a) = s.members().iter().find(|a| !minus_one_pairing(a).is_plus()) {
                return Err(Error::InvalidModel(format!(
                    "non-discrete model with class {a} in S and (a, -1) = -1"
                )));
            }
        }
        Ok(TauTwistModel {
            field,
            s,
            discrete,
            whittaker_support: support,
        })
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn s(&self) -> &ClassSubgroup {
        &self.s
    }

    pub fn is_discrete(&self) -> bool {
        self.discrete
    }

    pub fn whittaker_support(&self) -> &[SquareClass] {
        &self.whittaker_support
    }

    /// `S+ = {a in S : (a, -1) = 1}`.
    pub fn s_plus(&self) -> Vec<SquareClass> {
        self.s
            .members()
            .into_iter()
            .filter(|a| minus_one_pairing(a).is_plus())
            .collect()
    }

    /// Soft consistency checks that are not part of validity.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.discrete && self.whittaker_support.len() == 4 {
            w.push("discrete model with full Whittaker support".to_string());
        }
        w
    }
}

/// `m(τ) = |S+|`.
pub fn multiplicity(model: &TauTwistModel) -> usize {
    model.s_plus().len()
}

/// `a in S` and `(a, -1) = -1`: twisting by `a` carries `τ` to its
/// Waldspurger partner.
pub fn is_waldspurger_conjugate(model: &TauTwistModel, a: &SquareClass) -> Result<bool> {
    if !model.discrete {
        return Err(Error::NotDiscrete);
    }
    Ok(model.s.contains(a) && !minus_one_pairing(a).is_plus())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PacketProduct {
    pub m1: usize,
    pub m2: usize,
    pub product: usize,
}

/// `m2 = |S|`; `m1` is the number of twists of the pair `{τ, τ_W}`.
pub fn packet_product(model: &TauTwistModel) -> PacketProduct {
    let m2 = model.s.len();
    let m1 = if model.discrete {
        let s_plus = model.s_plus().len();
        let reachable = model
            .s
            .members()
            .iter()
            .any(|a| !minus_one_pairing(a).is_plus());
        if reachable {
            4 / s_plus
        } else {
            8 / s_plus
        }
    } else {
        4 / m2
    };
    PacketProduct {
        m1,
        m2,
        product: m1 * m2,
    }
}

/// One row of the multiplicity table.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityRow {
    pub s: String,
    pub discrete: bool,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub product: usize,
}

/// Every valid model over all five subgroups and both discreteness flags.
pub fn multiplicity_table(field: LocalField) -> Vec<MultiplicityRow> {
    let group = crate::characters::SquareClassGroup::new(field);
    let mut rows = Vec::new();
    for s in group.subgroups() {
        for discrete in [true, false] {
            let Ok(model) = TauTwistModel::new(s, discrete, &[group.identity()]) else {
                continue;
            };
            let pp = packet_product(&model);
            rows.push(MultiplicityRow {
                s: s.to_string(),
                discrete,
                m: multiplicity(&model),
                m1: pp.m1,
                m2: pp.m2,
                product: pp.product,
            });
        }
    }
    rows
}

/// For a Whittaker support of size 2 (a coset `{x, y}` of `{1, xy}`), a
/// class `b` such that `support` and `b · support` partition all classes.
pub fn complementary_support(field: LocalField, support: &[SquareClass]) -> Result<SquareClass> {
    if !field.minus_one_is_square() {
        return Err(Error::MinusOneNotSquare(field.to_string()));
    }
    let mut classes: Vec<SquareClass> = Vec::new();
    for c in support {
        if c.field() != field {
            return Err(Error::FieldMismatch(
                c.field().to_string(),
                field.to_string(),
            ));
        }
        if !classes.contains(c) {
            classes.push(*c);
        }
    }
    if classes.len() != 2 {
        return Err(Error::NotACoset);
    }
    let h = ClassSubgroup::generated_by(field, &[classes[0].mul(&classes[1])]);
    let b = SquareClass::all(field)
        .into_iter()
        .find(|c| !h.contains(c))
        .ok_or(Error::NoComplement)?;
    let shifted: Vec<SquareClass> = classes.iter().map(|c| c.mul(&b)).collect();
    let disjoint = shifted.iter().all(|c| !classes.contains(c));
    if !disjoint {
        return Err(Error::NoComplement);
    }
    Ok(b)
}

/// Root numbers of the four twists of `π` by `χ_x`, `x` in `{1, -1, a, -a}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonChain {
    pub classes: [String; 4],
    pub assignment: [Sign; 4],
    pub holds: bool,
}

/// With `-1` a non-square and `b` ramified, `a = -b`, and the seed `ε(π)`:
/// `ε(π ⊗ χ_{-1}) = -ε(π)`, `ε(π ⊗ χ_a) = ε(π ⊗ χ_{-1})`, and
/// `π ≅ π ⊗ χ_b` gives `ε(π ⊗ χ_{-a}) = ε(π)`. Checks
/// `ε(π ⊗ χ_x) = -ε(π ⊗ χ_{ax})` for every `x`.
pub fn epsilon_sign_chain(field: LocalField, b: &SquareClass, seed: Sign) -> Result<EpsilonChain> {
    if field.minus_one_is_square() {
        return Err(Error::MinusOneIsSquare(field.to_string()));
    }
    if b.field() != field {
        return Err(Error::FieldMismatch(
            b.field().to_string(),
            field.to_string(),
        ));
    }
    if !b.is_ramified() {
        return Err(Error::NotRamifiedClass);
    }
    let minus_one = FieldElement::from_int(field, -1).square_class()?;
    let a = minus_one.mul(b);
    let xs = [
        SquareClass::identity(field),
        minus_one,
        a,
        a.mul(&minus_one),
    ];

    let mut eps = [None::<Sign>; 4];
    eps[xs[0].index()] = Some(seed);
    eps[xs[1].index()] = Some(-seed);
    eps[xs[2].index()] = eps[xs[1].index()];
    // -a = b and π ⊗ χ_b ≅ π
    debug_assert_eq!(xs[3], *b);
    eps[xs[3].index()] = eps[xs[0].index()];

    let distinct = (0..4).all(|i| (0..i).all(|j| xs[i] != xs[j]));
    let eps = |c: &SquareClass| eps[c.index()].expect("every class assigned");
    let holds = distinct && xs.iter().all(|x| eps(x) == -eps(&a.mul(x)));
    Ok(EpsilonChain {
        classes: xs.map(|c| c.name().to_string()),
        assignment: xs.map(|c| eps(&c)),
        holds,
    })
}

/// A nonzero nilpotent element `(α, β; γ, -α)` of `sl2(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentSl2 {
    entries: [FieldElement; 4],
}

impl NilpotentSl2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        a.check_same_field(&b)?;
        a.check_same_field(&c)?;
        a.check_same_field(&d)?;
        if [&a, &b, &c, &d].iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroMatrix);
        }
        let trace = &a + &d;
        let det = &(&a * &d) - &(&b * &c);
        if !trace.is_zero() || !det.is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(NilpotentSl2 {
            entries: [a, b, c, d],
        })
    }

    /// `Y_a = (0, 0; a, 0)`.
    pub fn y_a(a: FieldElement) -> Result<Self> {
        let z = FieldElement::zero(a.field());
        NilpotentSl2::new(z.clone(), z.clone(), a, z)
    }

    /// Parse `a,b;c,d`.
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
        let e = entries
            .iter()
            .map(|t| FieldElement::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [FieldElement; 4] = e.try_into().expect("four entries");
        NilpotentSl2::new(a, b, c, d)
    }

    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.entries
    }

    pub fn field(&self) -> LocalField {
        self.entries[0].field()
    }

    /// `g Y g^{-1}`.
    pub fn conjugate(&self, g: &Mat2) -> Result<Self> {
        let [a, b, c, d] = g.entries();
        let gi = g.inverse();
        let [ia, ib, ic, id] = gi.entries();
        let [y0, y1, y2, y3] = &self.entries;
        // g Y
        let t0 = &(a * y0) + &(b * y2);
        let t1 = &(a * y1) + &(b * y3);
        let t2 = &(c * y0) + &(d * y2);
        let t3 = &(c * y1) + &(d * y3);
        NilpotentSl2::new(
            &(&t0 * ia) + &(&t1 * ic),
            &(&t0 * ib) + &(&t1 * id),
            &(&t2 * ia) + &(&t3 * ic),
            &(&t2 * ib) + &(&t3 * id),
        )
    }
}

impl fmt::Display for NilpotentSl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[{a},{b};{c},{d}]")
    }
}

/// The class `a` with `Y` conjugate to `Y_a` under `SL2(E)`.
pub fn orbit_invariant(y: &NilpotentSl2) -> SquareClass {
    let [_, beta, gamma, _] = &y.entries;
    if !gamma.is_zero() {
        gamma.square_class().expect("nonzero")
    } else {
        (-beta)
            .square_class()
            .expect("a nonzero nilpotent has β or γ nonzero")
    }
}

/// `B(X, Z) = tr(X Z)` on 2x2 matrices given as `[a, b, c, d]`.
pub fn trace_form(x: &[FieldElement; 4], z: &[FieldElement; 4]) -> FieldElement {
    let [x0, x1, x2, x3] = x;
    let [z0, z1, z2, z3] = z;
    &(&(x0 * z0) + &(x1 * z2)) + &(&(x2 * z1) + &(x3 * z3))
}

/// `ψ(B(Y_a, log n_x))` with `log n_x = (0, x; 0, 0)`.
pub fn whittaker_datum_eval(
    a: &FieldElement,
    x: &FieldElement,
    psi: &AdditiveChar,
) -> Result<RootOfUnity> {
    a.check_nonzero()?;
    a.check_same_field(x)?;
    let y = NilpotentSl2::y_a(a.clone())?;
    let z = FieldElement::zero(a.field());
    let log_n = [z.clone(), x.clone(), z.clone(), z];
    Ok(psi.eval(&trace_form(y.entries(), &log_n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::SquareClassGroup;

    fn el(f: LocalField, s: &str) -> FieldElement {
        FieldElement::parse(f, s).unwrap()
    }

    /// Count twist classes of `{τ, τ_W}` by union-find over (side, twist).
    fn orbit_oracle(model: &TauTwistModel) -> usize {
        let mut parent: Vec<usize> = (0..8).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        let sides = if model.is_discrete() { 2 } else { 1 };
        for side in 0..sides {
            for t in 0..4 {
                for s in model.s().members() {
                    let flips = model.is_discrete() && !minus_one_pairing(&s).is_plus();
                    let other = if flips { 1 - side } else { side };
                    let (i, j) = (side * 4 + t, other * 4 + (t ^ s.index()));
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut roots: Vec<usize> = (0..4 * sides).map(|i| find(&mut parent, i)).collect();
        roots.sort();
        roots.dedup();
        roots.len()
    }

    fn fields() -> Vec<LocalField> {
        vec![
            LocalField::base(3).unwrap(),
            LocalField::base(5).unwrap(),
            LocalField::unramified(3, 2).unwrap(),
            LocalField::ramified(3, 3).unwrap(),
            LocalField::ramified(5, 5).unwrap(),
        ]
    }

    #[test]
    fn packet_products_match_orbit_oracle() {
        for f in fields() {
            let g = SquareClassGroup::new(f);
            for s in g.subgroups() {
                for discrete in [true, false] {
                    let Ok(model) = TauTwistModel::new(s, discrete, &[g.identity()]) else {
                        assert!(!discrete);
                        continue;
                    };
                    let pp = packet_product(&model);
                    assert_eq!(pp.m1, orbit_oracle(&model), "{s} {discrete} {f}");
                    assert_eq!(pp.product, if discrete { 8 } else { 4 });
                    assert!([1, 2, 4].contains(&multiplicity(&model)));
                }
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let f = LocalField::unramified(3, 2).unwrap();
        let one = SquareClass::identity(f);
        let m = TauTwistModel::new(ClassSubgroup::trivial(f), true, &[one]).unwrap();
        assert_eq!(multiplicity(&m), 1);
        let m = TauTwistModel::new(ClassSubgroup::full(f), true, &[one]).unwrap();
        assert_eq!(multiplicity(&m), 4);
        // Q_3: (3, -1) = -1
        let f = LocalField::base(3).unwrap();
        let pi = SquareClass::from_index(f, 2);
        let s = ClassSubgroup::generated_by(f, &[pi]);
        let m = TauTwistModel::new(s, true, &[SquareClass::identity(f)]).unwrap();
        assert_eq!(multiplicity(&m), 1);
        assert_eq!(is_waldspurger_conjugate(&m, &pi), Ok(true));
        assert_eq!(
            is_waldspurger_conjugate(&m, &SquareClass::identity(f)),
            Ok(false)
        );
        assert!(TauTwistModel::new(s, false, &[pi]).is_err());
        assert!(TauTwistModel::new(s, true, &[]).is_err());
    }

    #[test]
    fn packet_examples() {
        let f = LocalField::base(3).unwrap();
        let one = [SquareClass::identity(f)];
        let pp = |s, d| packet_product(&TauTwistModel::new(s, d, &one).unwrap());
        assert_eq!(
            pp(ClassSubgroup::trivial(f), true),
            PacketProduct {
                m1: 8,
                m2: 1,
                product: 8
            }
        );
        assert_eq!(
            pp(ClassSubgroup::full(f), true),
            PacketProduct {
                m1: 2,
                m2: 4,
                product: 8
            }
        );
        let u = SquareClass::from_index(f, 1);
        let s = ClassSubgroup::generated_by(f, &[u]);
        assert_eq!(
            pp(s, false),
            PacketProduct {
                m1: 2,
                m2: 2,
                product: 4
            }
        );
        let rows = multiplicity_table(f);
        assert_eq!(rows.len(), 7);
    }

    #[test]
    fn complementary_examples() {
        let f = LocalField::base(5).unwrap();
        let c = SquareClass::all(f);
        for i in 0..4 {
            for j in 0..i {
                let support = [c[i], c[j]];
                let b = complementary_support(f, &support).unwrap();
                let mut all: Vec<usize> = support
                    .iter()
                    .chain(&support.map(|x| x.mul(&b)))
                    .map(|x| x.index())
                    .collect();
                all.sort();
                assert_eq!(all, [0, 1, 2, 3]);
            }
        }
        assert_eq!(complementary_support(f, &c), Err(Error::NotACoset));
        assert_eq!(complementary_support(f, &c[..1]), Err(Error::NotACoset));
        let q3 = LocalField::base(3).unwrap();
        assert!(matches!(
            complementary_support(q3, &SquareClass::all(q3)[..2]),
            Err(Error::MinusOneNotSquare(_))
        ));
    }

    #[test]
    fn epsilon_chain_examples() {
        let f = LocalField::base(7).unwrap();
        let pi = SquareClass::from_index(f, 2);
        let chain = epsilon_sign_chain(f, &pi, Sign::Plus).unwrap();
        assert!(chain.holds);
        assert_eq!(
            chain.assignment,
            [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]
        );
        let flipped = epsilon_sign_chain(f, &pi, Sign::Minus).unwrap();
        assert!(flipped.holds);
        assert_eq!(flipped.assignment, chain.assignment.map(|s| -s));
        assert_eq!(
            epsilon_sign_chain(f, &SquareClass::from_index(f, 1), Sign::Plus),
            Err(Error::NotRamifiedClass)
        );
        let f5 = LocalField::base(5).unwrap();
        assert!(matches!(
            epsilon_sign_chain(f5, &SquareClass::from_index(f5, 2), Sign::Plus),
            Err(Error::MinusOneIsSquare(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let f = LocalField::ramified(3, 3).unwrap();
        for c in SquareClass::all(f) {
            let y = NilpotentSl2::y_a(c.rep()).unwrap();
            assert_eq!(orbit_invariant(&y), c);
            let w = Mat2::weyl(f);
            let wy = y.conjugate(&w).unwrap();
            assert_eq!(wy.entries()[1], -&c.rep());
            assert_eq!(orbit_invariant(&wy), c);
            let t = el(f, "2:1");
            let dt = Mat2::diag(t.clone(), t.inverse().unwrap()).unwrap();
            assert_eq!(orbit_invariant(&y.conjugate(&dt).unwrap()), c);
        }
        let z = FieldElement::zero(f);
        assert_eq!(NilpotentSl2::y_a(z), Err(Error::ZeroMatrix));
        assert_eq!(NilpotentSl2::parse(f, "1,0;0,-1"), Err(Error::NotNilpotent));
        assert_eq!(NilpotentSl2::parse(f, "1,1;0,1"), Err(Error::NotNilpotent));
        let y = NilpotentSl2::parse(f, "1,-1;1,-1").unwrap();
        assert!(orbit_invariant(&y).is_identity());
    }

    #[test]
    fn whittaker_examples() {
        let f = LocalField::unramified(5, 2).unwrap();
        let psi = AdditiveChar::standard(f);
        let a = el(f, "1/5:2");
        assert!(whittaker_datum_eval(&a, &FieldElement::zero(f), &psi)
            .unwrap()
            .is_one());
        let x = el(f, "3/25:1/5");
        let direct = psi.twist(&a).unwrap().eval(&x);
        assert_eq!(whittaker_datum_eval(&a, &x, &psi).unwrap(), direct);
        assert_eq!(
            whittaker_datum_eval(&FieldElement::zero(f), &x, &psi),
            Err(Error::ZeroElement)
        );
    }
}
